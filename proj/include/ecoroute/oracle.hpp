#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "ecoroute/energy.hpp"
#include "ecoroute/network.hpp"
#include "ecoroute/routing.hpp"

// Brute-force reference solvers. They enumerate every simple path and share
// no search code with the production solvers; tests and `ecoroute verify`
// use them as referees.
namespace ecoroute::oracle {

inline constexpr std::size_t kDefaultNodeCap = 14;

struct PathEnumeration {
  std::vector<std::vector<LinkId>> paths;
  bool exhausted = false;  // false when max_paths stopped the enumeration
};

// Every simple origin -> destination path, in depth-first order over
// ascending link ids. origin == destination yields one empty path.
PathEnumeration enumerate_paths(
    const Network& net, NodeId origin, NodeId destination,
    std::size_t node_cap = kDefaultNodeCap,
    std::size_t max_paths = std::numeric_limits<std::size_t>::max());

// Minimum charge-depleting-first cost over all simple paths.
RouteSolution oracle_cdf(const Network& net, const Query& q,
                         const EnergyParams& p = {},
                         std::size_t node_cap = kDefaultNodeCap);

// Minimum over all simple paths of gasoline cost minus the optimal
// fixed-path battery savings.
RouteSolution oracle_crptc(const Network& net, const Query& q,
                           const EnergyParams& p = {},
                           std::size_t node_cap = kDefaultNodeCap);

// Small strongly connected random network (4..max_nodes nodes, mixed
// categories) and a random query on it; deterministic per seed.
Network random_instance(std::uint64_t seed, std::size_t max_nodes = 12);
Query random_query(const Network& net, std::uint64_t seed, double budget_kwh);

}  // namespace ecoroute::oracle
