#include "ecoroute/energy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ecoroute/error.hpp"

namespace ecoroute {

void EnergyParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(c_gas) || !positive(c_ele)) {
    throw DomainError("energy prices must be positive");
  }
  for (auto c : kAllCategories) {
    if (!positive(cd_efficiency(c)) || !positive(cs_efficiency(c))) {
      throw DomainError("conversion factors must be positive (category " +
                        std::string(to_string(c)) + ")");
    }
  }
}

EnergyParams parse_energy_params(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("energy params: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("energy params: expected an object");

  EnergyParams p;
  auto read = [&](const json& obj, const std::string& key, double& out,
                  const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) throw ParseError(path + ": expected a number");
    out = it->get<double>();
  };
  read(doc, "c_gas", p.c_gas, "$.c_gas");
  read(doc, "c_ele", p.c_ele, "$.c_ele");
  for (const char* table : {"mu_cd", "mu_cs"}) {
    auto it = doc.find(table);
    if (it == doc.end()) continue;
    if (!it->is_object()) {
      throw ParseError(std::string("$.") + table + ": expected an object");
    }
    auto& target = std::string_view(table) == "mu_cd" ? p.mu_cd : p.mu_cs;
    for (auto c : kAllCategories) {
      const std::string key(to_string(c));
      read(*it, key, target[index_of(c)],
           std::string("$.") + table + "." + key);
    }
  }
  p.validate();
  return p;
}

EnergyParams load_energy_params(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_energy_params(buf.str());
}

double cs_cost(double length_mi, TrafficCategory cat, const EnergyParams& p) {
  return p.c_gas * length_mi / p.cs_efficiency(cat);
}

CdCost cd_cost(double length_mi, TrafficCategory cat, const EnergyParams& p) {
  const double kwh = length_mi / p.cd_efficiency(cat);
  return {p.c_ele * kwh, kwh};
}

CdfLinkCost cdf_link_cost(double length_mi, TrafficCategory cat,
                          double residual_kwh, const EnergyParams& p) {
  if (residual_kwh < 0.0 || std::isnan(residual_kwh)) {
    throw DomainError("cdf_link_cost: residual energy must be >= 0");
  }
  const double need = length_mi / p.cd_efficiency(cat);
  if (residual_kwh >= need) {
    return {p.c_ele * need, residual_kwh - need};
  }
  if (residual_kwh == 0.0) return {cs_cost(length_mi, cat, p), 0.0};
  const double gas_miles = length_mi - p.cd_efficiency(cat) * residual_kwh;
  return {p.c_ele * residual_kwh + p.c_gas * gas_miles / p.cs_efficiency(cat),
          0.0};
}

double savings_rate(TrafficCategory cat, const EnergyParams& p) {
  return p.cd_efficiency(cat) * p.c_gas / p.cs_efficiency(cat) - p.c_ele;
}

double link_cs_cost(const Network& net, LinkId l, const EnergyParams& p) {
  return cs_cost(net.length(l), net.category(l), p);
}

double link_cd_kwh(const Network& net, LinkId l, const EnergyParams& p) {
  return net.length(l) / p.cd_efficiency(net.category(l));
}

void check_contiguous(const Network& net, std::span<const LinkId> path) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path[k].value >= net.link_count()) {
      throw StructuralError("path position " + std::to_string(k) +
                            ": unknown link " + std::to_string(path[k].value));
    }
    if (k > 0 && net.link(path[k - 1]).to != net.link(path[k]).from) {
      throw StructuralError("path is not contiguous at position " +
                            std::to_string(k));
    }
  }
}

CostBreakdown evaluate_route(const Network& net, std::span<const LinkId> path,
                             std::span<const double> y, const EnergyParams& p) {
  check_contiguous(net, path);
  if (y.size() != path.size()) {
    throw StructuralError("y has " + std::to_string(y.size()) +
                          " entries for a path of " +
                          std::to_string(path.size()) + " links");
  }
  CostBreakdown b;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!(y[k] >= 0.0 && y[k] <= 1.0)) {
      throw DomainError("y[" + std::to_string(k) + "] outside [0, 1]");
    }
    const auto cat = net.category(path[k]);
    const double len = net.length(path[k]);
    b.kwh_used += y[k] * len / p.cd_efficiency(cat);
    b.gallons_used += (1.0 - y[k]) * len / p.cs_efficiency(cat);
  }
  b.gas_dollars = p.c_gas * b.gallons_used;
  b.electricity_dollars = p.c_ele * b.kwh_used;
  b.total_dollars = b.gas_dollars + b.electricity_dollars;
  return b;
}

std::vector<double> cdf_policy(const Network& net, std::span<const LinkId> path,
                               double budget_kwh, const EnergyParams& p) {
  if (budget_kwh < 0.0) throw DomainError("budget must be >= 0");
  std::vector<double> y;
  y.reserve(path.size());
  double residual = budget_kwh;
  for (const auto l : path) {
    const double need = link_cd_kwh(net, l, p);
    if (residual >= need) {
      y.push_back(1.0);
      residual -= need;
    } else {
      y.push_back(residual / need);
      residual = 0.0;
    }
  }
  return y;
}

double cdf_path_cost(const Network& net, std::span<const LinkId> path,
                     double budget_kwh, const EnergyParams& p) {
  double cost = 0.0;
  double residual = budget_kwh;
  for (const auto l : path) {
    const auto step = cdf_link_cost(net.length(l), net.category(l), residual, p);
    cost += step.dollars;
    residual = step.residual_kwh;
  }
  return cost;
}

}  // namespace ecoroute
