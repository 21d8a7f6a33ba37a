#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "cli.hpp"
#include "common.hpp"
#include "ecoroute/crptc.hpp"
#include "ecoroute/error.hpp"

namespace ecoroute::cli {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
  if (!file) throw UsageError("error writing " + path);
}

}  // namespace

int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream&) {
  SyntheticSpec spec;
  if (o.kind == "grid") {
    spec.kind = SyntheticKind::Grid;
  } else if (o.kind == "random") {
    spec.kind = SyntheticKind::Random;
  } else {
    throw UsageError("--kind must be grid or random");
  }
  const auto mix = parse_number_list(o.mix);
  if (mix.size() != kCategoryCount) {
    throw UsageError("--mix takes three weights: high,medium,low");
  }
  // Weights need not sum to one.
  double sum = 0.0;
  for (double w : mix) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw UsageError("--mix weights must be non-negative");
    sum += w;
  }
  if (!(sum > 0.0)) throw UsageError("--mix weights are all zero");
  for (std::size_t c = 0; c < kCategoryCount; ++c) spec.category_mix[c] = mix[c] / sum;
  spec.nodes = o.nodes;
  spec.avg_degree = o.degree;
  spec.seed = o.seed;
  spec.slots = o.slots;
  const auto text = serialize_network(generate_synthetic(spec)) + "\n";
  if (o.output == "-") {
    out << text;
  } else {
    write_text(o.output, text);
  }
  return kExitOk;
}

int cmd_route(const RouteOptions& o, std::ostream& out, std::ostream& err) {
  const auto algo = parse_algo(o.algo);
  const auto net = read_network(o.net, o.slot, err);
  const auto params = read_params(o.params);
  Query q;
  q.origin = resolve_node(net, o.from, "--from");
  q.destination = resolve_node(net, o.to, "--to");
  q.budget_kwh = o.budget_kwh;
  q.alpha = o.alpha;
  q.beta_time = o.beta_time;
  q.beta_energy = o.beta_energy;
  q.slot = o.slot;

  RouteSolution s;
  if (o.alpha > 0.0) {
    // The time-weighted objective exists for the depletion-first and the
    // joint power-train models.
    if (algo == Algo::Cdf || algo == Algo::CdfExact) {
      s = weighted_route(net, q, WeightedAlgorithm::Cdf, params);
    } else if (algo == Algo::Crptc) {
      s = weighted_route(net, q, WeightedAlgorithm::Crptc, params);
    } else {
      throw UsageError("--alpha > 0 needs --algo cdf, cdf-exact or crptc");
    }
  } else {
    s = solve(net, q, algo, params);
  }
  if (!o.geojson.empty()) write_text(o.geojson, route_geojson(net, s).dump(1) + "\n");
  out << solution_json(net, q, s, o.timing).dump(1) << '\n';
  return kExitOk;
}

int cmd_export_milp(const ExportOptions& o, std::ostream& out, std::ostream& err) {
  const auto net = read_network(o.net, o.slot, err);
  const auto params = read_params(o.params);
  Query q;
  q.origin = resolve_node(net, o.from, "--from");
  q.destination = resolve_node(net, o.to, "--to");
  q.budget_kwh = o.budget_kwh;
  q.slot = o.slot;
  MilpExportOptions options;
  options.max_links = o.max_links;
  if (o.output == "-") {
    write_milp(out, net, q, params, options);
  } else {
    export_milp(net, q, o.output, params, options);
  }
  return kExitOk;
}

}  // namespace ecoroute::cli
