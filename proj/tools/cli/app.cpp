#include <ostream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "ecoroute/error.hpp"

namespace ecoroute::cli {

namespace {

void add_source(CLI::App* cmd, NetworkSource& s) {
  cmd->add_option("--net", s.net, "Network file (.json or .csv)");
  cmd->add_option("--gen-nodes", s.gen_nodes, "Generate a random network with this many nodes");
  cmd->add_option("--gen-degree", s.gen_degree, "Mean degree of the generated network")
      ->capture_default_str();
  cmd->add_option("--gen-seed", s.gen_seed, "Seed of the generated network")
      ->capture_default_str();
  cmd->add_option("--slot", s.slot, "Time slot")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PHEV eco-routing: energy-optimal routes and power-train split", "ecoroute"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic network file");
  gen_cmd->add_option("--kind", gen.kind, "grid or random")
      ->check(CLI::IsMember({"grid", "random"}))
      ->capture_default_str();
  gen_cmd->add_option("--nodes", gen.nodes, "Node count")->required();
  gen_cmd->add_option("--degree", gen.degree, "Mean total degree (random kind)")
      ->capture_default_str();
  gen_cmd->add_option("--mix", gen.mix, "Category weights high,medium,low")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--slots", gen.slots, "Time slots")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Output file, - for stdout")->required();

  RouteOptions route;
  bool route_no_timing = false;
  auto* route_cmd = app.add_subcommand("route", "Solve one query and print the route as JSON");
  route_cmd->add_option("--net", route.net, "Network file")->required();
  route_cmd->add_option("--from", route.from, "Origin node id")->required();
  route_cmd->add_option("--to", route.to, "Destination node id")->required();
  route_cmd->add_option("--algo", route.algo,
                        "fastest, cdf, cdf-exact, hybrid-lp, bilevel or crptc")
      ->check(CLI::IsMember({"fastest", "cdf", "cdf-exact", "hybrid-lp", "bilevel", "crptc"}))
      ->capture_default_str();
  route_cmd->add_option("--budget-kwh", route.budget_kwh, "Usable battery energy (kWh)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  route_cmd->add_option("--alpha", route.alpha, "Travel-time weight in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  route_cmd->add_option("--beta-time", route.beta_time, "Time normalizer (hours)");
  route_cmd->add_option("--beta-energy", route.beta_energy, "Cost normalizer (dollars)");
  route_cmd->add_option("--slot", route.slot, "Time slot")->capture_default_str();
  route_cmd->add_option("--params", route.params, "Energy parameter JSON file");
  route_cmd->add_option("--geojson", route.geojson, "Also write the route as GeoJSON");
  route_cmd->add_flag("--no-timing", route_no_timing, "Report wall time as 0");

  CompareOptions compare;
  bool compare_no_timing = false;
  auto* compare_cmd =
      app.add_subcommand("compare", "Run several algorithms on sampled O-D pairs and budgets");
  add_source(compare_cmd, compare.source);
  compare_cmd->add_option("--pairs", compare.pairs, "O-D pairs to sample")->capture_default_str();
  compare_cmd->add_option("--seed", compare.seed, "Sampling seed")->capture_default_str();
  compare_cmd->add_option("--budgets", compare.budgets, "Comma separated kWh budgets")
      ->capture_default_str();
  compare_cmd->add_option("--algos", compare.algos, "Comma separated algorithms")
      ->capture_default_str();
  compare_cmd->add_option("--format", compare.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  compare_cmd->add_option("--params", compare.params, "Energy parameter JSON file");
  compare_cmd->add_flag("--no-timing", compare_no_timing, "Report wall times as 0");

  VerifyOptions verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check every solver against brute force on random graphs");
  verify_cmd->add_option("--seeds", verify.seeds, "Number of random graphs")
      ->capture_default_str();
  verify_cmd->add_option("--first-seed", verify.first_seed, "Seed of the first graph")
      ->capture_default_str();
  verify_cmd->add_option("--max-nodes", verify.max_nodes, "Largest graph (4 to 14)")
      ->check(CLI::Range(4, 14))
      ->capture_default_str();
  verify_cmd->add_option("--budgets", verify.budgets, "Comma separated kWh budgets")
      ->capture_default_str();
  verify_cmd->add_option("--params", verify.params, "Energy parameter JSON file");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time algorithms on sampled queries");
  add_source(bench_cmd, bench.source);
  bench_cmd->add_option("--pairs", bench.pairs, "Queries per algorithm")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Sampling seed")->capture_default_str();
  bench_cmd->add_option("--algos", bench.algos, "Comma separated algorithms")
      ->capture_default_str();
  bench_cmd->add_option("--budget-kwh", bench.budget_kwh, "Battery budget per query")
      ->capture_default_str();
  bench_cmd->add_option("--format", bench.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  bench_cmd->add_option("--json", bench.json_out, "Also write the JSON report here");
  bench_cmd->add_option("--params", bench.params, "Energy parameter JSON file");

  ExportOptions exp;
  auto* export_cmd =
      app.add_subcommand("export-milp", "Write the joint route/power-train MILP in LP format");
  export_cmd->add_option("--net", exp.net, "Network file")->required();
  export_cmd->add_option("--from", exp.from, "Origin node id")->required();
  export_cmd->add_option("--to", exp.to, "Destination node id")->required();
  export_cmd->add_option("--budget-kwh", exp.budget_kwh, "Usable battery energy (kWh)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  export_cmd->add_option("--slot", exp.slot, "Time slot")->capture_default_str();
  export_cmd->add_option("--params", exp.params, "Energy parameter JSON file");
  export_cmd->add_option("--max-links", exp.max_links, "Refuse larger networks")
      ->capture_default_str();
  export_cmd->add_option("-o,--output", exp.output, "LP file, - for stdout")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out, err);
    if (route_cmd->parsed()) {
      route.timing = !route_no_timing;
      return cmd_route(route, out, err);
    }
    if (compare_cmd->parsed()) {
      compare.timing = !compare_no_timing;
      return cmd_compare(compare, out, err);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (export_cmd->parsed()) return cmd_export_milp(exp, out, err);
  } catch (const NoRouteError&) {
    out << "{\"error\":\"no_route\"}\n";
    return kExitNoRoute;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    // Bad input files, parameters or queries.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace ecoroute::cli
