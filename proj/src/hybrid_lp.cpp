#include <chrono>
#include <map>

#include "ecoroute/error.hpp"
#include "ecoroute/routing.hpp"
#include "search_detail.hpp"

namespace ecoroute {
namespace {

using detail::kInf;

struct Prefix {
  double cost = kInf;
  std::vector<LinkId> links;
};

// Depth-first construction of every simple path from the origin that either
// runs the battery flat (stops at that node) or reaches the destination with
// charge left. Partial paths dearer than the reference cost are cut.
class DepletionEnumerator {
 public:
  DepletionEnumerator(const Network& net, const Query& q, const EnergyParams& p,
                      double reference_cost, std::size_t max_expansions)
      : net_(net),
        q_(q),
        p_(p),
        limit_(reference_cost + detail::kDominanceTol),
        max_expansions_(max_expansions),
        on_path_(net.node_count(), 0) {}

  void run() {
    if (q_.budget_kwh <= 0.0) {
      // Empty battery: every path is gasoline-only from the origin.
      depleted_[q_.origin.value] = Prefix{0.0, {}};
      return;
    }
    on_path_[q_.origin.value] = 1;
    extend(q_.origin, 0.0, q_.budget_kwh);
  }

  const std::map<std::uint32_t, Prefix>& depleted() const { return depleted_; }
  const Prefix& never_depleted() const { return charged_; }

 private:
  void extend(NodeId u, double cost, double residual) {
    if (++expansions_ > max_expansions_) {
      throw CapacityError("hybrid-lp path enumeration exceeded " +
                          std::to_string(max_expansions_) +
                          " expansions; use cdf-exact");
    }
    for (const auto l : net_.out_links(u)) {
      const auto v = net_.link(l).to;
      if (on_path_[v.value]) continue;
      const auto step = cdf_link_cost(net_.length(l), net_.category(l), residual, p_);
      const double next = cost + step.dollars;
      if (next > limit_) continue;
      path_.push_back(l);
      if (step.residual_kwh <= 0.0) {
        keep(depleted_[v.value], next);
      } else if (v == q_.destination) {
        keep(charged_, next);
      } else {
        on_path_[v.value] = 1;
        extend(v, next, step.residual_kwh);
        on_path_[v.value] = 0;
      }
      path_.pop_back();
    }
  }

  void keep(Prefix& best, double cost) {
    if (cost < best.cost) best = Prefix{cost, path_};
  }

  const Network& net_;
  const Query& q_;
  const EnergyParams& p_;
  double limit_;
  std::size_t max_expansions_;
  std::size_t expansions_ = 0;
  std::vector<char> on_path_;
  std::vector<LinkId> path_;
  std::map<std::uint32_t, Prefix> depleted_;
  Prefix charged_;
};

}  // namespace

RouteSolution hybrid_lp_route(const Network& net, const Query& q,
                              const EnergyParams& p,
                              const HybridLpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  validate_query(net, q, p);
  if (net.node_count() > options.node_cap) {
    throw CapacityError("hybrid-lp is limited to " +
                        std::to_string(options.node_cap) +
                        " nodes; use cdf-exact");
  }
  if (q.origin == q.destination) {
    return detail::trivial_solution(net, q, p, "hybrid-lp");
  }

  // Reference cost: the shortest-distance path under the CDF policy.
  const auto shortest = detail::dijkstra(
      net, q.origin, [&](LinkId l) { return net.length(l); },
      detail::Direction::Forward, q.destination);
  if (shortest.dist[q.destination.value] == kInf) {
    throw NoRouteError("destination unreachable from origin");
  }
  const auto reference = detail::path_to(net, shortest, q.origin, q.destination);
  const double rho = cdf_path_cost(net, reference, q.budget_kwh, p);

  DepletionEnumerator paths(net, q, p, rho, options.max_expansions);
  paths.run();

  // After depletion only gasoline is used, so the cheapest continuation from
  // every node is one backward Dijkstra on gasoline cost.
  const auto gas_tree = detail::dijkstra(
      net, q.destination, [&](LinkId l) { return link_cs_cost(net, l, p); },
      detail::Direction::Backward);

  double best = kInf;
  std::vector<LinkId> walk;
  for (const auto& [node, prefix] : paths.depleted()) {
    const double tail = gas_tree.dist[node];
    if (tail == kInf || prefix.cost + tail >= best) continue;
    best = prefix.cost + tail;
    walk = prefix.links;
    const auto suffix = detail::path_from(net, gas_tree, q.destination, NodeId{node});
    walk.insert(walk.end(), suffix.begin(), suffix.end());
  }
  if (paths.never_depleted().cost < best) {
    best = paths.never_depleted().cost;
    walk = paths.never_depleted().links;
  }
  if (best == kInf) {
    // Every candidate was cut by the reference bound, so the reference path
    // itself is optimal.
    walk = reference;
  }

  // Prefix and gasoline suffix may share nodes; cutting the loop never raises
  // the cost.
  auto links = remove_cycles(net, q.origin, walk);
  auto y = cdf_policy(net, links, q.budget_kwh, p);
  auto s = make_solution(net, q.origin, std::move(links), std::move(y), p,
                         "hybrid-lp");
  s.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace ecoroute
