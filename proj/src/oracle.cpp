#include "ecoroute/oracle.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "ecoroute/crptc.hpp"
#include "ecoroute/error.hpp"

namespace ecoroute::oracle {
namespace {

class Enumerator {
 public:
  Enumerator(const Network& net, NodeId destination, std::size_t max_paths)
      : net_(net),
        destination_(destination),
        max_paths_(max_paths),
        visited_(net.node_count(), false) {}

  PathEnumeration run(NodeId origin) {
    result_.exhausted = true;
    if (origin == destination_) {
      result_.paths.emplace_back();
      return std::move(result_);
    }
    visited_[origin.value] = true;
    walk(origin);
    return std::move(result_);
  }

 private:
  void walk(NodeId u) {
    for (const auto l : net_.out_links(u)) {
      if (!result_.exhausted) return;
      const auto v = net_.link(l).to;
      if (visited_[v.value]) continue;
      current_.push_back(l);
      if (v == destination_) {
        if (result_.paths.size() == max_paths_) {
          result_.exhausted = false;
        } else {
          result_.paths.push_back(current_);
        }
      } else {
        visited_[v.value] = true;
        walk(v);
        visited_[v.value] = false;
      }
      current_.pop_back();
    }
  }

  const Network& net_;
  NodeId destination_;
  std::size_t max_paths_;
  std::vector<bool> visited_;
  std::vector<LinkId> current_;
  PathEnumeration result_;
};

PathEnumeration all_paths(const Network& net, const Query& q,
                          const EnergyParams& p, std::size_t node_cap) {
  validate_query(net, q, p);
  auto paths = enumerate_paths(net, q.origin, q.destination, node_cap);
  if (paths.paths.empty()) throw NoRouteError("destination unreachable from origin");
  return paths;
}

RouteSolution finish(const Network& net, const Query& q, const EnergyParams& p,
                     std::vector<LinkId> links, std::vector<double> y,
                     double objective, const char* tag) {
  auto s = make_solution(net, q.origin, std::move(links), std::move(y), p, tag);
  s.objective = objective;
  return s;
}

}  // namespace

PathEnumeration enumerate_paths(const Network& net, NodeId origin,
                                NodeId destination, std::size_t node_cap,
                                std::size_t max_paths) {
  if (net.node_count() > node_cap) {
    throw CapacityError("path enumeration limited to " + std::to_string(node_cap) +
                        " nodes, network has " + std::to_string(net.node_count()));
  }
  if (!net.contains(origin) || !net.contains(destination)) {
    throw RangeError("origin or destination is not a node of the network");
  }
  return Enumerator(net, destination, max_paths).run(origin);
}

RouteSolution oracle_cdf(const Network& net, const Query& q,
                         const EnergyParams& p, std::size_t node_cap) {
  const auto paths = all_paths(net, q, p, node_cap);
  double best = std::numeric_limits<double>::infinity();
  const std::vector<LinkId>* winner = nullptr;
  std::vector<double> winner_y;
  for (const auto& path : paths.paths) {
    double cost = 0.0;
    double residual = q.budget_kwh;
    std::vector<double> y;
    for (const auto l : path) {
      const double need = net.length(l) / p.cd_efficiency(net.category(l));
      y.push_back(residual >= need ? 1.0 : residual / need);
      const auto step = cdf_link_cost(net.length(l), net.category(l), residual, p);
      cost += step.dollars;
      residual = step.residual_kwh;
    }
    if (cost < best) {
      best = cost;
      winner = &path;
      winner_y = std::move(y);
    }
  }
  return finish(net, q, p, *winner, std::move(winner_y), best, "oracle-cdf");
}

RouteSolution oracle_crptc(const Network& net, const Query& q,
                           const EnergyParams& p, std::size_t node_cap) {
  const auto paths = all_paths(net, q, p, node_cap);
  double best = std::numeric_limits<double>::infinity();
  const std::vector<LinkId>* winner = nullptr;
  std::vector<double> winner_y;
  for (const auto& path : paths.paths) {
    double gas = 0.0;
    for (const auto l : path) gas += cs_cost(net.length(l), net.category(l), p);
    auto split = knapsack_split(net, path, q.budget_kwh, p);
    const double cost = gas - split.total_savings;
    if (cost < best) {
      best = cost;
      winner = &path;
      winner_y = std::move(split.y);
    }
  }
  return finish(net, q, p, *winner, std::move(winner_y), best, "oracle-crptc");
}

Network random_instance(std::uint64_t seed, std::size_t max_nodes) {
  if (max_nodes < 4) throw ParameterError("random instances need max_nodes >= 4");
  std::mt19937_64 rng(seed * 7919 + 13);
  SyntheticSpec spec;
  spec.kind = SyntheticKind::Random;
  spec.nodes = std::uniform_int_distribution<std::size_t>(4, max_nodes)(rng);
  const double max_degree = std::min(5.0, 2.0 * static_cast<double>(spec.nodes - 1));
  spec.avg_degree = std::uniform_real_distribution<double>(2.0, max_degree)(rng);
  spec.seed = seed;
  return generate_synthetic(spec);
}

Query random_query(const Network& net, std::uint64_t seed, double budget_kwh) {
  if (net.node_count() < 2) throw ParameterError("random queries need >= 2 nodes");
  std::mt19937_64 rng(seed * 104729 + 7);
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(net.node_count() - 1));
  Query q;
  q.origin = NodeId{pick(rng)};
  do {
    q.destination = NodeId{pick(rng)};
  } while (q.destination == q.origin);
  q.budget_kwh = budget_kwh;
  q.slot = net.slot();
  return q;
}

}  // namespace ecoroute::oracle
