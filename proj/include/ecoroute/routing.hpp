#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecoroute/energy.hpp"
#include "ecoroute/network.hpp"

namespace ecoroute {

struct Query {
  NodeId origin;
  NodeId destination;
  double budget_kwh = 0.0;  // usable battery energy, min(depletion allowance, initial charge)
  double alpha = 0.0;       // time weight of the weighted objectives
  // Normalizers of the weighted objectives; network-wide maxima when unset.
  std::optional<double> beta_time;    // hours
  std::optional<double> beta_energy;  // dollars
  std::size_t slot = 0;               // must match the network's active slot
};

struct RouteSolution {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;
  std::vector<double> y;  // CD fraction per link
  CostBreakdown breakdown;
  double travel_time_h = 0.0;
  // Value the solver minimized: dollars for the eco solvers, hours for the
  // fastest route, the normalized weighted sum for weighted_route.
  double objective = 0.0;
  std::string algorithm;
  double wall_time_s = 0.0;
};

// Upper bounds used as default normalizers: the largest single-link travel
// time and the largest single-link energy cost (either mode).
struct NormalizationBounds {
  double max_link_time_h;
  double max_link_cost_dollars;
};
NormalizationBounds normalization_bounds(const Network& net,
                                         const EnergyParams& p);

struct HybridLpOptions {
  std::size_t node_cap = 500;
  std::size_t max_expansions = 20'000'000;
};

// Minimum travel time (Dijkstra on length / average speed); CD fractions are
// then assigned along the path by the charge-depleting-first policy.
RouteSolution fastest_route(const Network& net, const Query& q,
                            const EnergyParams& p = {});

// Single-label modified Dijkstra: one (cost, residual energy) pair per node,
// relaxed with the CDF link cost. Keeping only the cheapest label is safe for
// the dollar objective: an undepleted prefix costs c_ele * (budget - residual),
// so cheaper always means more charge left.
RouteSolution cdf_dijkstra(const Network& net, const Query& q,
                           const EnergyParams& p = {});

// Exact CDF eco-route by Pareto label setting over (cost, residual energy).
RouteSolution cdf_exact(const Network& net, const Query& q,
                        const EnergyParams& p = {});

// Exact CDF eco-route by splitting every path at the node where the battery
// first runs out: enumerated prefixes up to that node, then a gasoline-only
// shortest path to the destination. Throws CapacityError above the node cap.
RouteSolution hybrid_lp_route(const Network& net, const Query& q,
                              const EnergyParams& p = {},
                              const HybridLpOptions& options = {});

enum class WeightedAlgorithm { Cdf, Crptc };

// Minimizes alpha * time / beta_time + (1 - alpha) * cost / beta_energy.
RouteSolution weighted_route(const Network& net, const Query& q,
                             WeightedAlgorithm algo,
                             const EnergyParams& p = {});

// Shared validation: endpoints, slot, budget, energy params.
void validate_query(const Network& net, const Query& q, const EnergyParams& p);

// Fills nodes, y-derived breakdown and travel time for a link path.
RouteSolution make_solution(const Network& net, NodeId origin,
                            std::vector<LinkId> links, std::vector<double> y,
                            const EnergyParams& p, std::string algorithm);

// Turns a walk into a simple path by cutting every cycle.
std::vector<LinkId> remove_cycles(const Network& net, NodeId origin,
                                  const std::vector<LinkId>& walk);

}  // namespace ecoroute
