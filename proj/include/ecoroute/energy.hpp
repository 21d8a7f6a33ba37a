#pragma once

#include <array>
#include <span>
#include <vector>
#include <string>
#include <string_view>

#include "ecoroute/network.hpp"

namespace ecoroute {

// Prices and per-category conversion factors of the indirect energy model.
// Units: $/gallon, $/kWh, mi/kWh (charge depleting), mi/gallon (charge
// sustaining). Defaults are the Audi A3 e-tron drive-cycle averages.
struct EnergyParams {
  double c_gas = 2.75;
  double c_ele = 0.114;
  // Indexed by index_of(TrafficCategory): High/NYC, Medium/UDDS, Low/HWFET.
  std::array<double, kCategoryCount> mu_cd = {3.14, 4.39, 4.14};
  std::array<double, kCategoryCount> mu_cs = {28.88, 49.03, 47.11};

  double cd_efficiency(TrafficCategory c) const { return mu_cd[index_of(c)]; }
  double cs_efficiency(TrafficCategory c) const { return mu_cs[index_of(c)]; }

  // Throws DomainError unless every field is strictly positive and finite.
  void validate() const;
};

// {"c_gas":..,"c_ele":..,"mu_cd":{"high":..,"medium":..,"low":..},"mu_cs":{..}}
// Missing keys keep their defaults.
EnergyParams parse_energy_params(std::string_view json_text);
EnergyParams load_energy_params(const std::string& path);

struct CostBreakdown {
  double gas_dollars = 0.0;
  double electricity_dollars = 0.0;
  double kwh_used = 0.0;
  double gallons_used = 0.0;
  double total_dollars = 0.0;
};

struct CdCost {
  double dollars;
  double kwh;
};

struct CdfLinkCost {
  double dollars;
  double residual_kwh;  // battery energy left after the link
};

// Cost of driving `length_mi` on gasoline only.
double cs_cost(double length_mi, TrafficCategory cat, const EnergyParams& p);

CdCost cd_cost(double length_mi, TrafficCategory cat, const EnergyParams& p);

// Charge-depleting-first link cost: battery first, gasoline once it is empty.
// The residual is clipped at zero.
CdfLinkCost cdf_link_cost(double length_mi, TrafficCategory cat,
                          double residual_kwh, const EnergyParams& p);

// Dollars saved per kWh spent in CD mode instead of CS mode on a link of
// this category. Negative when electricity is the dearer fuel per mile.
double savings_rate(TrafficCategory cat, const EnergyParams& p);

// Gasoline-only cost of a link of the network.
double link_cs_cost(const Network& net, LinkId l, const EnergyParams& p);
// kWh to drive the whole link in CD mode.
double link_cd_kwh(const Network& net, LinkId l, const EnergyParams& p);

// Throws StructuralError unless `path` is a contiguous walk. An empty path
// is valid.
void check_contiguous(const Network& net, std::span<const LinkId> path);

// Cost of driving `path` with fraction y[k] of link k in CD mode.
CostBreakdown evaluate_route(const Network& net, std::span<const LinkId> path,
                             std::span<const double> y, const EnergyParams& p);

// CD fractions produced by the charge-depleting-first policy with
// `budget_kwh` of battery at the origin.
std::vector<double> cdf_policy(const Network& net, std::span<const LinkId> path,
                               double budget_kwh, const EnergyParams& p);

// Total CDF cost of a path, threading the residual link by link.
double cdf_path_cost(const Network& net, std::span<const LinkId> path,
                     double budget_kwh, const EnergyParams& p);

}  // namespace ecoroute
