#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ecoroute/energy.hpp"
#include "ecoroute/network.hpp"
#include "ecoroute/routing.hpp"

namespace ecoroute {

// Optimal power-train split on a fixed path.
struct KnapsackSplit {
  std::vector<double> y;
  std::vector<double> kwh_allocated;
  double total_savings = 0.0;
};

// Fractional knapsack: battery energy goes to links in descending savings
// rate (path order on ties), links with a non-positive rate get none. This is
// the exact optimum of the fixed-route power-train LP.
KnapsackSplit knapsack_split(const Network& net, std::span<const LinkId> path,
                             double budget_kwh, const EnergyParams& p);

// Route from cdf_dijkstra, then the optimal split along it.
RouteSolution bilevel_route(const Network& net, const Query& q,
                            const EnergyParams& p = {});

// Joint route and power-train optimum (the CRPTC MILP), solved by label
// setting over (gasoline cost, per-category CD capacity).
RouteSolution crptc_exact(const Network& net, const Query& q,
                          const EnergyParams& p = {});

struct MilpExportOptions {
  std::size_t max_links = 1'000'000;
};

// Writes the CRPTC MILP in CPLEX LP format. Variables are x_k (binary route
// choice), y_k (CD fraction) and z_k = x_k * y_k for every link index k.
void write_milp(std::ostream& out, const Network& net, const Query& q,
                const EnergyParams& p, const MilpExportOptions& options = {});
void export_milp(const Network& net, const Query& q, const std::string& path,
                 const EnergyParams& p = {},
                 const MilpExportOptions& options = {});

}  // namespace ecoroute
