#pragma once

// Internal search machinery shared by the solver translation units.

#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ecoroute/energy.hpp"
#include "ecoroute/network.hpp"
#include "ecoroute/routing.hpp"

namespace ecoroute::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Absolute slack used by every dominance and pruning comparison.
inline constexpr double kDominanceTol = 1e-9;

enum class Direction { Forward, Backward };

struct ShortestPathTree {
  std::vector<double> dist;
  // Forward: link entering the node. Backward: link leaving it towards the
  // root.
  std::vector<std::optional<LinkId>> via;
};

// Plain Dijkstra over non-negative link weights. Equal distances pop in
// ascending node id and the first discovered predecessor is kept. Stops early
// once `target` is settled.
template <class Weight>
ShortestPathTree dijkstra(const Network& net, NodeId root, Weight&& weight,
                          Direction dir = Direction::Forward,
                          std::optional<NodeId> target = std::nullopt) {
  const auto n = net.node_count();
  ShortestPathTree tree{std::vector<double>(n, kInf),
                        std::vector<std::optional<LinkId>>(n)};
  std::vector<char> done(n, 0);
  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  tree.dist[root.value] = 0.0;
  heap.emplace(0.0, root.value);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (target && target->value == u) break;
    const auto adj = dir == Direction::Forward ? net.out_links(NodeId{u})
                                               : net.in_links(NodeId{u});
    for (const auto l : adj) {
      const auto& link = net.link(l);
      const auto v = dir == Direction::Forward ? link.to.value : link.from.value;
      const double alt = d + weight(l);
      if (alt < tree.dist[v]) {
        tree.dist[v] = alt;
        tree.via[v] = l;
        heap.emplace(alt, v);
      }
    }
  }
  return tree;
}

// Links from the root to `node` of a forward tree.
std::vector<LinkId> path_to(const Network& net, const ShortestPathTree& tree,
                            NodeId root, NodeId node);
// Links from `node` to the root of a backward tree.
std::vector<LinkId> path_from(const Network& net, const ShortestPathTree& tree,
                              NodeId root, NodeId node);

// Objective = time * w_time + dollars * w_energy, summed over links.
struct ObjectiveWeights {
  double time = 0.0;
  double energy = 1.0;
};

RouteSolution cdf_label_search(const Network& net, const Query& q,
                               const EnergyParams& p, ObjectiveWeights w,
                               std::string algorithm);

RouteSolution crptc_label_search(const Network& net, const Query& q,
                                 const EnergyParams& p, ObjectiveWeights w,
                                 std::string algorithm);

// Empty route for origin == destination.
RouteSolution trivial_solution(const Network& net, const Query& q,
                               const EnergyParams& p, std::string algorithm);

}  // namespace ecoroute::detail
