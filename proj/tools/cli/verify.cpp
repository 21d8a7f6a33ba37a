#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "ecoroute/crptc.hpp"
#include "ecoroute/oracle.hpp"

namespace ecoroute::cli {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kOrderTol = 1e-12;

bool close(double a, double b) {
  return std::abs(a - b) <= kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Check names in report order.
const char* const kChecks[] = {
    "cdf_exact == oracle_cdf",
    "crptc_exact == oracle_crptc",
    "hybrid_lp == cdf_exact",
    "crptc <= bilevel <= cdf",
    "crptc <= fastest",
    "budget 0: crptc == bilevel == cdf",
    "saturating budget: crptc == bilevel == cdf",
    "knapsack split beats random splits",
};

struct Tally {
  std::size_t passed = 0;
  std::size_t total = 0;
};

struct SeedResult {
  std::map<std::string, Tally> tallies;
  std::size_t queries = 0;
  std::size_t divergent = 0;  // cdf_dijkstra objective above cdf_exact
  std::vector<std::string> failures;
};

class Checker {
 public:
  Checker(SeedResult& r, std::uint64_t seed, std::size_t max_nodes)
      : r_(r), seed_(seed), max_nodes_(max_nodes) {}

  void expect(const char* name, bool ok, const Network& net, const Query& q,
              const std::string& detail) {
    auto& t = r_.tallies[name];
    ++t.total;
    if (ok) {
      ++t.passed;
      return;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "FAIL " << name << ": seed=" << seed_ << " max_nodes=" << max_nodes_
        << " origin=" << net.node(q.origin).id << " destination=" << net.node(q.destination).id
        << " budget_kwh=" << q.budget_kwh << " (" << detail << ")";
    r_.failures.push_back(msg.str());
  }

 private:
  SeedResult& r_;
  std::uint64_t seed_;
  std::size_t max_nodes_;
};

std::string pair_detail(double a, double b) {
  std::ostringstream s;
  s.precision(17);
  s << a << " vs " << b;
  return s.str();
}

SeedResult verify_seed(std::uint64_t seed, std::size_t max_nodes,
                       const std::vector<double>& budgets, const EnergyParams& p) {
  SeedResult r;
  Checker check(r, seed, max_nodes);
  const auto net = oracle::random_instance(seed, max_nodes);

  auto run_query = [&](const Query& q) {
    ++r.queries;
    const auto fast = fastest_route(net, q, p);
    const auto cdf = cdf_dijkstra(net, q, p);
    const auto exact = cdf_exact(net, q, p);
    const auto hybrid = hybrid_lp_route(net, q, p);
    const auto bi = bilevel_route(net, q, p);
    const auto crptc = crptc_exact(net, q, p);
    const auto ref_cdf = oracle::oracle_cdf(net, q, p);
    const auto ref_crptc = oracle::oracle_crptc(net, q, p);
    if (!close(cdf.objective, exact.objective)) ++r.divergent;

    check.expect(kChecks[0], close(exact.objective, ref_cdf.objective), net, q,
                 pair_detail(exact.objective, ref_cdf.objective));
    check.expect(kChecks[1], close(crptc.objective, ref_crptc.objective), net, q,
                 pair_detail(crptc.objective, ref_crptc.objective));
    check.expect(kChecks[2], close(hybrid.objective, exact.objective), net, q,
                 pair_detail(hybrid.objective, exact.objective));
    check.expect(kChecks[3],
                 crptc.objective <= bi.objective + kOrderTol &&
                     bi.objective <= exact.objective + kOrderTol,
                 net, q, pair_detail(crptc.objective, bi.objective));
    check.expect(kChecks[4], crptc.objective <= fast.breakdown.total_dollars + kOrderTol, net, q,
                 pair_detail(crptc.objective, fast.breakdown.total_dollars));
    return std::tuple{cdf, bi, crptc};
  };

  for (double budget : budgets) {
    const auto q = oracle::random_query(net, seed, budget);
    const auto [cdf, bi, crptc] = run_query(q);
    if (budget == 0.0) {
      check.expect(kChecks[5],
                   crptc.objective == bi.objective && bi.objective == cdf.objective, net, q,
                   pair_detail(crptc.objective, cdf.objective));
    }

    // Random feasible splits on the crptc path never beat the greedy split.
    const auto best = knapsack_split(net, crptc.links, budget, p);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool beaten = false;
    for (int trial = 0; trial < 200 && !crptc.links.empty(); ++trial) {
      double kwh = 0.0;
      std::vector<double> y(crptc.links.size());
      for (std::size_t k = 0; k < y.size(); ++k) {
        y[k] = unit(rng);
        kwh += y[k] * link_cd_kwh(net, crptc.links[k], p);
      }
      const double scale = kwh > budget ? budget / kwh : 1.0;
      double savings = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) {
        const auto l = crptc.links[k];
        savings += scale * y[k] * link_cd_kwh(net, l, p) * savings_rate(net.category(l), p);
      }
      beaten = beaten || savings > best.total_savings + kRelTol;
    }
    check.expect(kChecks[7], !beaten, net, q, "random split saved more");
  }

  // A budget that covers every link in CD mode saturates any simple path.
  // The collapse only holds when electricity is the cheaper fuel everywhere.
  for (auto c : kAllCategories) {
    if (savings_rate(c, p) <= 0.0) return r;
  }
  double saturating = 0.0;
  for (std::uint32_t l = 0; l < net.link_count(); ++l) saturating += link_cd_kwh(net, LinkId{l}, p);
  const auto q = oracle::random_query(net, seed, saturating * (1 + 1e-9));
  const auto [cdf, bi, crptc] = run_query(q);
  check.expect(kChecks[6], close(crptc.objective, bi.objective) && close(bi.objective, cdf.objective),
               net, q, pair_detail(crptc.objective, cdf.objective));
  return r;
}

}  // namespace

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream&) {
  if (o.max_nodes < 4 || o.max_nodes > oracle::kDefaultNodeCap) {
    throw UsageError("--max-nodes must be between 4 and 14");
  }
  const auto budgets = parse_number_list(o.budgets);
  for (double b : budgets) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw UsageError("--budgets must be non-negative");
  }
  const auto params = read_params(o.params);
  params.validate();

  std::vector<SeedResult> results(o.seeds);
  parallel_for(o.seeds, [&](std::size_t i) {
    results[i] = verify_seed(o.first_seed + i, o.max_nodes, budgets, params);
  });

  SeedResult total;
  for (const auto& r : results) {
    for (const auto& [name, t] : r.tallies) {
      total.tallies[name].passed += t.passed;
      total.tallies[name].total += t.total;
    }
    total.queries += r.queries;
    total.divergent += r.divergent;
    total.failures.insert(total.failures.end(), r.failures.begin(), r.failures.end());
  }

  out << "seeds: " << o.seeds << " (from " << o.first_seed << "), max nodes: " << o.max_nodes
      << ", queries: " << total.queries << '\n';
  for (const char* name : kChecks) {
    const auto& t = total.tallies[name];
    out << name << ": " << t.passed << '/' << t.total << '\n';
  }
  const double rate = total.queries
                          ? static_cast<double>(total.divergent) / static_cast<double>(total.queries)
                          : 0.0;
  out << "divergence cdf_dijkstra vs cdf_exact: " << total.divergent << '/' << total.queries
      << " (rate " << round9(rate) << ")\n";

  if (total.failures.empty()) {
    out << "verify: PASS\n";
    return kExitOk;
  }
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < total.failures.size() && i < kShown; ++i) {
    out << total.failures[i] << '\n';
  }
  if (total.failures.size() > kShown) {
    out << "... " << total.failures.size() - kShown << " more failures\n";
  }
  out << "verify: FAIL\n";
  return kExitFailed;
}

}  // namespace ecoroute::cli
