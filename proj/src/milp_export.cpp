#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "ecoroute/crptc.hpp"
#include "ecoroute/error.hpp"

namespace ecoroute {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accumulates "+ c name" terms, wrapping long rows.
class Row {
 public:
  explicit Row(std::ostream& out) : out_(out) {}

  void term(double coef, const std::string& name) {
    if (count_ > 0 && count_ % 6 == 0) out_ << "\n   ";
    if (coef < 0) {
      out_ << " - " << num(-coef) << ' ' << name;
    } else {
      out_ << " + " << num(coef) << ' ' << name;
    }
    ++count_;
  }
  bool empty() const { return count_ == 0; }

 private:
  std::ostream& out_;
  std::size_t count_ = 0;
};

std::string var(char kind, std::uint32_t link) {
  return std::string(1, kind) + "_" + std::to_string(link);
}

}  // namespace

void write_milp(std::ostream& out, const Network& net, const Query& q,
                const EnergyParams& p, const MilpExportOptions& options) {
  validate_query(net, q, p);
  const auto m = net.link_count();
  if (m > options.max_links) {
    throw CapacityError("MILP export limited to " +
                        std::to_string(options.max_links) + " links, network has " +
                        std::to_string(m));
  }

  out << "\\ Combined routing and power-train control\n";
  out << "\\ origin " << q.origin.value << ", destination " << q.destination.value
      << ", budget " << num(q.budget_kwh) << " kWh\n";
  out << "Minimize\n obj:";
  {
    Row row(out);
    for (std::uint32_t k = 0; k < m; ++k) {
      const LinkId l{k};
      const auto cat = net.category(l);
      const double gas = cs_cost(net.length(l), cat, p);
      const double ele = cd_cost(net.length(l), cat, p).dollars;
      row.term(gas, var('x', k));
      row.term(ele - gas, var('z', k));
    }
  }
  out << "\nSubject To\n";

  for (std::uint32_t i = 0; i < net.node_count(); ++i) {
    const NodeId node{i};
    const double rhs = (node == q.destination ? 1.0 : 0.0) -
                       (node == q.origin ? 1.0 : 0.0);
    if (net.in_links(node).empty() && net.out_links(node).empty() && rhs == 0.0) {
      continue;
    }
    out << " flow_" << i << ":";
    Row row(out);
    for (const auto l : net.in_links(node)) row.term(1.0, var('x', l.value));
    for (const auto l : net.out_links(node)) row.term(-1.0, var('x', l.value));
    if (row.empty()) out << " 0 x_0";
    out << " = " << num(rhs) << '\n';
  }

  out << " energy:";
  {
    Row row(out);
    for (std::uint32_t k = 0; k < m; ++k) {
      row.term(link_cd_kwh(net, LinkId{k}, p), var('z', k));
    }
  }
  out << " <= " << num(q.budget_kwh) << '\n';

  for (std::uint32_t k = 0; k < m; ++k) {
    const auto x = var('x', k);
    const auto y = var('y', k);
    const auto z = var('z', k);
    out << " zy_" << k << ": " << z << " - " << y << " <= 0\n";
    out << " zyx_" << k << ": " << z << " - " << y << " - " << x << " >= -1\n";
    out << " zx_" << k << ": " << z << " - " << x << " <= 0\n";
  }

  out << "Bounds\n";
  for (std::uint32_t k = 0; k < m; ++k) {
    out << " 0 <= " << var('y', k) << " <= 1\n";
    out << " " << var('z', k) << " >= 0\n";
  }
  out << "Binary\n";
  for (std::uint32_t k = 0; k < m; ++k) out << " " << var('x', k) << '\n';
  out << "End\n";
}

void export_milp(const Network& net, const Query& q, const std::string& path,
                 const EnergyParams& p, const MilpExportOptions& options) {
  std::ostringstream text;
  write_milp(text, net, q, p, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text.str();
  if (!out) throw Error(path + ": write failed");
}

}  // namespace ecoroute
