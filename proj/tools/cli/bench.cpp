#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "ecoroute/error.hpp"
#include "source.hpp"

namespace ecoroute::cli {

namespace {

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
  double max = 0.0;
};

Stats summarize(std::vector<double> t) {
  Stats s;
  if (t.empty()) return s;
  std::sort(t.begin(), t.end());
  double sum = 0.0;
  for (double v : t) sum += v;
  s.mean = sum / static_cast<double>(t.size());
  const auto n = t.size();
  s.median = n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = t[std::max<std::size_t>(rank, 1) - 1];
  s.max = t.back();
  return s;
}

}  // namespace

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (o.format != "table" && o.format != "json") throw UsageError("--format must be table or json");
  if (o.pairs == 0) throw UsageError("--pairs must be at least 1");
  if (!(o.budget_kwh >= 0.0) || !std::isfinite(o.budget_kwh)) {
    throw UsageError("--budget-kwh must be non-negative");
  }
  const auto algos = parse_algo_list(o.algos);
  const auto params = read_params(o.params);
  params.validate();
  const auto net = load_source(o.source, err);
  const auto pairs = sample_pairs(net, o.pairs, o.seed);

  // Queries run one at a time so that timings do not compete for cores.
  Json results = Json::array();
  std::vector<std::pair<Algo, Stats>> table;
  std::vector<std::size_t> failures;
  for (const auto algo : algos) {
    std::vector<double> times;
    std::size_t failed = 0;
    for (const auto& [origin, destination] : pairs) {
      Query q;
      q.origin = origin;
      q.destination = destination;
      q.budget_kwh = o.budget_kwh;
      q.slot = net.slot();
      const auto start = now_ns();
      try {
        (void)solve(net, q, algo, params);
        times.push_back(seconds_since(start));
      } catch (const Error&) {
        ++failed;
      }
    }
    const auto s = summarize(times);
    table.emplace_back(algo, s);
    failures.push_back(failed);
  }

  double cdf_mean = -1.0;
  for (const auto& [algo, s] : table) {
    if (algo == Algo::Cdf) cdf_mean = s.mean;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& [algo, s] = table[i];
    Json j;
    j["algorithm"] = algo_name(algo);
    j["queries"] = pairs.size() - failures[i];
    j["errors"] = failures[i];
    j["mean_s"] = round9(s.mean);
    j["median_s"] = round9(s.median);
    j["p95_s"] = round9(s.p95);
    j["max_s"] = round9(s.max);
    j["slower_than_cdf"] =
        cdf_mean >= 0.0 && algo != Algo::Cdf && algo != Algo::Fastest && s.mean > cdf_mean;
    results.push_back(std::move(j));
  }
  Json doc;
  doc["nodes"] = net.node_count();
  doc["links"] = net.link_count();
  doc["pairs"] = pairs.size();
  doc["seed"] = o.seed;
  doc["budget_kwh"] = round9(o.budget_kwh);
  doc["results"] = std::move(results);

  if (!o.json_out.empty()) {
    std::ofstream file(o.json_out);
    if (!file) throw UsageError("cannot write " + o.json_out);
    file << doc.dump(1) << '\n';
  }
  if (o.format == "json") {
    out << doc.dump(1) << '\n';
    return kExitOk;
  }
  out << "network: " << net.node_count() << " nodes, " << net.link_count() << " links; "
      << pairs.size() << " queries per algorithm, budget " << round9(o.budget_kwh) << " kWh\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %8s %12s %12s %12s %12s %7s  %s\n", "algorithm",
                "queries", "mean_s", "median_s", "p95_s", "max_s", "errors", "note");
  out << line;
  for (const auto& r : doc["results"]) {
    std::snprintf(line, sizeof line, "%-10s %8zu %12.6f %12.6f %12.6f %12.6f %7zu  %s\n",
                  r["algorithm"].get<std::string>().c_str(), r["queries"].get<std::size_t>(),
                  r["mean_s"].get<double>(), r["median_s"].get<double>(),
                  r["p95_s"].get<double>(), r["max_s"].get<double>(),
                  r["errors"].get<std::size_t>(),
                  r["slower_than_cdf"].get<bool>() ? "slower than cdf" : "");
    out << line;
  }
  return kExitOk;
}

}  // namespace ecoroute::cli
