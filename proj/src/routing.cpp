#include "ecoroute/routing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include "ecoroute/error.hpp"
#include "search_detail.hpp"

namespace ecoroute {
namespace detail {

std::vector<LinkId> path_to(const Network& net, const ShortestPathTree& tree,
                            NodeId root, NodeId node) {
  std::vector<LinkId> links;
  while (node != root) {
    const auto l = *tree.via[node.value];
    links.push_back(l);
    node = net.link(l).from;
  }
  std::reverse(links.begin(), links.end());
  return links;
}

std::vector<LinkId> path_from(const Network& net, const ShortestPathTree& tree,
                              NodeId root, NodeId node) {
  std::vector<LinkId> links;
  while (node != root) {
    const auto l = *tree.via[node.value];
    links.push_back(l);
    node = net.link(l).to;
  }
  return links;
}

RouteSolution trivial_solution(const Network& net, const Query& q,
                               const EnergyParams& p, std::string algorithm) {
  return make_solution(net, q.origin, {}, {}, p, std::move(algorithm));
}

}  // namespace detail

namespace {

using detail::kInf;

class WallClock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

void validate_query(const Network& net, const Query& q, const EnergyParams& p) {
  if (!net.contains(q.origin) || !net.contains(q.destination)) {
    throw RangeError("origin or destination is not a node of the network");
  }
  if (q.slot != net.slot()) {
    throw RangeError("query slot " + std::to_string(q.slot) +
                     " differs from the network's active slot " +
                     std::to_string(net.slot()));
  }
  if (!(q.budget_kwh >= 0.0) || !std::isfinite(q.budget_kwh)) {
    throw DomainError("energy budget must be a finite value >= 0");
  }
  p.validate();
}

NormalizationBounds normalization_bounds(const Network& net,
                                         const EnergyParams& p) {
  NormalizationBounds b{0.0, 0.0};
  for (std::uint32_t l = 0; l < net.link_count(); ++l) {
    const LinkId id{l};
    const auto cat = net.category(id);
    b.max_link_time_h = std::max(b.max_link_time_h, net.travel_time(id));
    b.max_link_cost_dollars =
        std::max({b.max_link_cost_dollars, cs_cost(net.length(id), cat, p),
                  cd_cost(net.length(id), cat, p).dollars});
  }
  return b;
}

RouteSolution make_solution(const Network& net, NodeId origin,
                            std::vector<LinkId> links, std::vector<double> y,
                            const EnergyParams& p, std::string algorithm) {
  RouteSolution s;
  s.breakdown = evaluate_route(net, links, y, p);
  s.nodes.push_back(origin);
  for (const auto l : links) {
    s.nodes.push_back(net.link(l).to);
    s.travel_time_h += net.travel_time(l);
  }
  s.objective = s.breakdown.total_dollars;
  s.links = std::move(links);
  s.y = std::move(y);
  s.algorithm = std::move(algorithm);
  return s;
}

std::vector<LinkId> remove_cycles(const Network& net, NodeId origin,
                                  const std::vector<LinkId>& walk) {
  std::vector<LinkId> out;
  std::unordered_map<std::uint32_t, std::size_t> position{{origin.value, 0}};
  for (const auto l : walk) {
    const auto v = net.link(l).to.value;
    if (auto it = position.find(v); it != position.end()) {
      // Drop the loop that returns to v.
      for (std::size_t k = it->second; k < out.size(); ++k) {
        position.erase(net.link(out[k]).to.value);
      }
      out.resize(it->second);
      position[v] = out.size();
    } else {
      out.push_back(l);
      position[v] = out.size();
    }
  }
  return out;
}

RouteSolution fastest_route(const Network& net, const Query& q,
                            const EnergyParams& p) {
  WallClock clock;
  validate_query(net, q, p);
  if (q.origin == q.destination) {
    return detail::trivial_solution(net, q, p, "fastest");
  }
  const auto tree = detail::dijkstra(
      net, q.origin, [&](LinkId l) { return net.travel_time(l); },
      detail::Direction::Forward, q.destination);
  if (tree.dist[q.destination.value] == kInf) {
    throw NoRouteError("destination unreachable from origin");
  }
  auto links = detail::path_to(net, tree, q.origin, q.destination);
  auto y = cdf_policy(net, links, q.budget_kwh, p);
  auto s = make_solution(net, q.origin, std::move(links), std::move(y), p,
                         "fastest");
  s.objective = s.travel_time_h;
  s.wall_time_s = clock.seconds();
  return s;
}

RouteSolution cdf_dijkstra(const Network& net, const Query& q,
                           const EnergyParams& p) {
  WallClock clock;
  validate_query(net, q, p);
  if (q.origin == q.destination) {
    return detail::trivial_solution(net, q, p, "cdf");
  }
  const auto n = net.node_count();
  std::vector<double> cost(n, kInf);
  std::vector<double> energy(n, 0.0);
  std::vector<std::optional<LinkId>> prev(n);
  std::vector<char> removed(n, 0);
  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  cost[q.origin.value] = 0.0;
  energy[q.origin.value] = q.budget_kwh;
  queue.emplace(0.0, q.origin.value);
  bool reached = false;
  while (!queue.empty()) {
    const auto u = queue.top().second;
    queue.pop();
    if (removed[u]) continue;
    removed[u] = 1;
    if (u == q.destination.value) {
      reached = true;
      break;
    }
    for (const auto l : net.out_links(NodeId{u})) {
      const auto v = net.link(l).to.value;
      const auto step =
          cdf_link_cost(net.length(l), net.category(l), energy[u], p);
      const double alt = cost[u] + step.dollars;
      if (alt < cost[v]) {
        cost[v] = alt;
        energy[v] = step.residual_kwh;
        prev[v] = l;
        queue.emplace(alt, v);
      }
    }
  }
  if (!reached) throw NoRouteError("destination unreachable from origin");

  std::vector<LinkId> links;
  for (auto v = q.destination; v != q.origin;) {
    const auto l = *prev[v.value];
    links.push_back(l);
    v = net.link(l).from;
  }
  std::reverse(links.begin(), links.end());
  auto y = cdf_policy(net, links, q.budget_kwh, p);
  auto s = make_solution(net, q.origin, std::move(links), std::move(y), p, "cdf");
  s.wall_time_s = clock.seconds();
  return s;
}

RouteSolution cdf_exact(const Network& net, const Query& q,
                        const EnergyParams& p) {
  WallClock clock;
  validate_query(net, q, p);
  auto s = detail::cdf_label_search(net, q, p, {0.0, 1.0}, "cdf-exact");
  s.wall_time_s = clock.seconds();
  return s;
}

RouteSolution weighted_route(const Network& net, const Query& q,
                             WeightedAlgorithm algo, const EnergyParams& p) {
  WallClock clock;
  validate_query(net, q, p);
  if (!(q.alpha >= 0.0 && q.alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0, 1]");
  }
  const auto bounds = normalization_bounds(net, p);
  const double beta_time = q.beta_time.value_or(bounds.max_link_time_h);
  const double beta_energy = q.beta_energy.value_or(bounds.max_link_cost_dollars);
  if (!(beta_time > 0.0) || !(beta_energy > 0.0)) {
    throw DomainError("normalizers must be positive");
  }
  // Normalizers must bound every single-link term so both lie in [0, 1].
  if (beta_time < bounds.max_link_time_h * (1.0 - 1e-12) ||
      beta_energy < bounds.max_link_cost_dollars * (1.0 - 1e-12)) {
    throw DomainError("normalizers must be at least the largest link time and cost");
  }
  const detail::ObjectiveWeights w{q.alpha / beta_time,
                                   (1.0 - q.alpha) / beta_energy};
  const bool crptc = algo == WeightedAlgorithm::Crptc;
  auto s = crptc ? detail::crptc_label_search(net, q, p, w, "weighted-crptc")
                 : detail::cdf_label_search(net, q, p, w, "weighted-cdf");
  s.objective = w.time * s.travel_time_h + w.energy * s.breakdown.total_dollars;
  s.wall_time_s = clock.seconds();
  return s;
}

}  // namespace ecoroute
