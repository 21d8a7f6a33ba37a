#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "ecoroute/error.hpp"
#include "source.hpp"

namespace ecoroute::cli {

namespace {

struct Row {
  std::size_t pair = 0;
  NodeId origin;
  NodeId destination;
  double budget = 0.0;
  Algo algo{};
  std::optional<RouteSolution> solution;
  std::string error;
};

// Mean of 100 * (base - alt) / base over rows where both succeeded.
struct Mean {
  double sum = 0.0;
  std::size_t count = 0;
  void add(double base, double alt) {
    if (base > 0.0) {
      sum += 100.0 * (base - alt) / base;
      ++count;
    }
  }
  Json value() const { return count ? Json(round9(sum / static_cast<double>(count))) : Json(); }
};

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
  if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
  auto algos = parse_algo_list(o.algos);
  // The fastest route is the savings baseline, so it always runs.
  if (std::find(algos.begin(), algos.end(), Algo::Fastest) == algos.end()) {
    algos.insert(algos.begin(), Algo::Fastest);
  }
  const auto budgets = parse_number_list(o.budgets);
  if (budgets.empty()) throw UsageError("--budgets is empty");
  for (double b : budgets) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw UsageError("--budgets must be non-negative");
  }
  const auto params = read_params(o.params);
  params.validate();

  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::optional<Network> net;
  if (o.pairs > 0) {
    net = load_source(o.source, err);
    pairs = sample_pairs(*net, o.pairs, o.seed);
  }

  std::vector<Row> rows;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (double b : budgets) {
      for (auto a : algos) rows.push_back({p, pairs[p].first, pairs[p].second, b, a, {}, {}});
    }
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    auto& row = rows[i];
    Query q;
    q.origin = row.origin;
    q.destination = row.destination;
    q.budget_kwh = row.budget;
    q.slot = net->slot();
    try {
      row.solution = solve(*net, q, row.algo, params);
    } catch (const NoRouteError&) {
      row.error = "no_route";
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  // Aggregates per budget, in the order the budgets were given.
  const auto stride = algos.size();
  Json aggregate = Json::array();
  Json pairwise = Json::array();
  for (std::size_t bi = 0; bi < budgets.size() && !pairs.empty(); ++bi) {
    auto at = [&](std::size_t p, std::size_t a) -> const Row& {
      return rows[(p * budgets.size() + bi) * stride + a];
    };
    for (std::size_t a = 0; a < stride; ++a) {
      Mean energy;
      Mean time;
      std::size_t failed = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto& base = at(p, 0);
        const auto& alt = at(p, a);
        if (!alt.solution) ++failed;
        if (!base.solution || !alt.solution) continue;
        energy.add(base.solution->breakdown.total_dollars, alt.solution->breakdown.total_dollars);
        time.add(base.solution->travel_time_h, alt.solution->travel_time_h);
      }
      aggregate.push_back({{"budget_kwh", round9(budgets[bi])},
                           {"algorithm", algo_name(algos[a])},
                           {"mean_energy_savings_pct", energy.value()},
                           {"mean_time_savings_pct", time.value()},
                           {"rows", energy.count},
                           {"errors", failed}});
    }
    for (std::size_t b = 0; b < stride; ++b) {
      for (std::size_t a = 0; a < stride; ++a) {
        if (a == b) continue;
        Mean energy;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          const auto& base = at(p, b);
          const auto& alt = at(p, a);
          if (!base.solution || !alt.solution) continue;
          energy.add(base.solution->breakdown.total_dollars, alt.solution->breakdown.total_dollars);
        }
        pairwise.push_back({{"budget_kwh", round9(budgets[bi])},
                            {"base", algo_name(algos[b])},
                            {"alt", algo_name(algos[a])},
                            {"mean_energy_savings_pct", energy.value()},
                            {"rows", energy.count}});
      }
    }
  }

  auto wall = [&](const RouteSolution& s) { return o.timing ? round9(s.wall_time_s) : 0.0; };
  if (o.format == "csv") {
    out << "pair,origin,destination,budget_kwh,algorithm,energy_cost,travel_time_h,"
           "kwh_used,wall_time_s,error\n";
    for (const auto& r : rows) {
      out << r.pair << ',' << net->node(r.origin).id << ',' << net->node(r.destination).id << ','
          << csv_number(r.budget) << ',' << algo_name(r.algo) << ',';
      if (r.solution) {
        out << csv_number(r.solution->breakdown.total_dollars) << ','
            << csv_number(r.solution->travel_time_h) << ','
            << csv_number(r.solution->breakdown.kwh_used) << ',' << csv_number(wall(*r.solution))
            << ",\n";
      } else {
        std::string msg = r.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out << ",,,," << msg << '\n';
      }
    }
    out << "\nbudget_kwh,algorithm,mean_energy_savings_pct,mean_time_savings_pct,rows,errors\n";
    for (const auto& a : aggregate) {
      auto num = [](const Json& v) { return v.is_null() ? std::string() : csv_number(v.get<double>()); };
      out << csv_number(a["budget_kwh"].get<double>()) << ',' << a["algorithm"].get<std::string>()
          << ',' << num(a["mean_energy_savings_pct"]) << ',' << num(a["mean_time_savings_pct"])
          << ',' << a["rows"].get<std::size_t>() << ',' << a["errors"].get<std::size_t>() << '\n';
    }
    return kExitOk;
  }

  Json doc;
  doc["seed"] = o.seed;
  doc["pairs"] = pairs.size();
  doc["baseline"] = "fastest";
  Json budget_list = Json::array();
  for (double b : budgets) budget_list.push_back(round9(b));
  doc["budgets_kwh"] = budget_list;
  Json algo_list = Json::array();
  for (auto a : algos) algo_list.push_back(algo_name(a));
  doc["algorithms"] = algo_list;
  Json row_list = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["pair"] = r.pair;
    j["origin"] = net->node(r.origin).id;
    j["destination"] = net->node(r.destination).id;
    j["budget_kwh"] = round9(r.budget);
    j["algorithm"] = algo_name(r.algo);
    if (r.solution) {
      j["energy_cost"] = round9(r.solution->breakdown.total_dollars);
      j["travel_time_h"] = round9(r.solution->travel_time_h);
      j["kwh_used"] = round9(r.solution->breakdown.kwh_used);
      j["wall_time_s"] = wall(*r.solution);
      j["error"] = nullptr;
    } else {
      j["error"] = r.error;
    }
    row_list.push_back(std::move(j));
  }
  doc["rows"] = std::move(row_list);
  doc["aggregate"] = std::move(aggregate);
  doc["pairwise"] = std::move(pairwise);
  out << doc.dump(1) << '\n';
  return kExitOk;
}

}  // namespace ecoroute::cli
