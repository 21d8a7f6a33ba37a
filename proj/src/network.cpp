#include "ecoroute/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "ecoroute/error.hpp"

namespace ecoroute {

std::string_view to_string(TrafficCategory c) {
  switch (c) {
    case TrafficCategory::High:
      return "high";
    case TrafficCategory::Medium:
      return "medium";
    case TrafficCategory::Low:
      return "low";
  }
  return "unknown";
}

std::optional<TrafficCategory> category_from_string(std::string_view name) {
  for (auto c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

TrafficCategory categorize_link(double avg_speed_mph, double free_flow_mph) {
  if (!(free_flow_mph > 0.0) || !(avg_speed_mph > 0.0)) {
    std::ostringstream msg;
    msg << "categorize_link: speeds must be positive (avg=" << avg_speed_mph
        << ", free_flow=" << free_flow_mph << ")";
    throw DomainError(msg.str());
  }
  const double s = avg_speed_mph / free_flow_mph;
  if (s <= 0.5) return TrafficCategory::High;
  if (s < 0.75) return TrafficCategory::Medium;
  return TrafficCategory::Low;
}

std::span<const LinkId> Network::out_links(NodeId n) const {
  const auto b = out_offset_[n.value];
  const auto e = out_offset_[n.value + 1];
  return std::span<const LinkId>(out_).subspan(b, e - b);
}

std::span<const LinkId> Network::in_links(NodeId n) const {
  const auto b = in_offset_[n.value];
  const auto e = in_offset_[n.value + 1];
  return std::span<const LinkId>(in_).subspan(b, e - b);
}

bool Network::has_coordinates() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return n.lat.has_value() && n.lon.has_value();
  });
}

std::optional<NodeId> Network::find_node(std::uint32_t external_id) const {
  if (external_.empty()) {
    if (external_id < nodes_.size()) return NodeId{external_id};
    return std::nullopt;
  }
  auto it = std::lower_bound(
      external_.begin(), external_.end(), external_id,
      [](const auto& entry, std::uint32_t key) { return entry.first < key; });
  if (it == external_.end() || it->first != external_id) return std::nullopt;
  return it->second;
}

Network Network::with_slot(std::size_t slot) const {
  if (slot >= slot_count_) {
    throw RangeError("slot " + std::to_string(slot) + " out of range (" +
                     std::to_string(slot_count_) + " slots)");
  }
  Network copy = *this;
  copy.slot_ = slot;
  for (std::size_t l = 0; l < links_.size(); ++l) {
    copy.category_[l] =
        categorize_link(links_[l].avg_mph[slot], links_[l].free_flow_mph);
  }
  return copy;
}

void Network::index(std::size_t slot) {
  slot_ = slot;
  const auto n = nodes_.size();
  const auto m = links_.size();

  category_.resize(m);
  for (std::size_t l = 0; l < m; ++l) {
    category_[l] =
        categorize_link(links_[l].avg_mph[slot], links_[l].free_flow_mph);
  }

  // CSR adjacency; link ids within each bucket stay ascending.
  out_offset_.assign(n + 1, 0);
  in_offset_.assign(n + 1, 0);
  for (const auto& link : links_) {
    ++out_offset_[link.from.value + 1];
    ++in_offset_[link.to.value + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offset_[i + 1] += out_offset_[i];
    in_offset_[i + 1] += in_offset_[i];
  }
  out_.resize(m);
  in_.resize(m);
  auto out_fill = out_offset_;
  auto in_fill = in_offset_;
  for (std::uint32_t l = 0; l < m; ++l) {
    out_[out_fill[links_[l].from.value]++] = LinkId{l};
    in_[in_fill[links_[l].to.value]++] = LinkId{l};
  }
}

NetworkBuilder::NetworkBuilder(std::size_t slot_count)
    : slot_count_(slot_count) {
  if (slot_count == 0) throw ParameterError("slot_count must be at least 1");
}

NodeId NetworkBuilder::add_node(std::optional<double> lat,
                                std::optional<double> lon) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  return add_node(index, lat, lon);
}

NodeId NetworkBuilder::add_node(std::uint32_t external_id,
                                std::optional<double> lat,
                                std::optional<double> lon) {
  nodes_.push_back(Node{lat, lon, external_id});
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

void NetworkBuilder::add_nodes(std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) add_node();
}

LinkId NetworkBuilder::add_link(LinkSpec spec) {
  const auto index = static_cast<std::uint32_t>(links_.size());
  const auto where = "link " + std::to_string(index);
  if (spec.from >= nodes_.size() || spec.to >= nodes_.size()) {
    throw ParseError(where + ": endpoint is not a declared node");
  }
  if (spec.from == spec.to) throw ParseError(where + ": self loop");
  if (!(spec.length_mi > 0.0) || !std::isfinite(spec.length_mi)) {
    throw ParseError(where + ": length_mi must be positive");
  }
  if (!(spec.free_flow_mph > 0.0) || !std::isfinite(spec.free_flow_mph)) {
    throw ParseError(where + ": free_flow_mph must be positive");
  }
  if (spec.avg_mph.size() != slot_count_) {
    throw ParseError(where + ": expected " + std::to_string(slot_count_) +
                     " avg_mph entries, got " +
                     std::to_string(spec.avg_mph.size()));
  }
  for (std::size_t s = 0; s < spec.avg_mph.size(); ++s) {
    double& v = spec.avg_mph[s];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParseError(where + ": avg_mph[" + std::to_string(s) +
                       "] must be positive");
    }
    if (v > spec.free_flow_mph) {
      std::ostringstream msg;
      msg << where << ": avg_mph[" << s << "]=" << v
          << " exceeds free flow " << spec.free_flow_mph << ", clamped";
      warnings_.push_back(msg.str());
      v = spec.free_flow_mph;
    }
  }
  links_.push_back(Link{spec.id.value_or(index), NodeId{spec.from},
                        NodeId{spec.to}, spec.length_mi, spec.free_flow_mph,
                        std::move(spec.avg_mph)});
  return LinkId{index};
}

LinkId NetworkBuilder::add_link(std::uint32_t from, std::uint32_t to,
                                double length_mi, double free_flow_mph,
                                double avg_mph) {
  return add_link(LinkSpec{std::nullopt, from, to, length_mi, free_flow_mph,
                           std::vector<double>(slot_count_, avg_mph)});
}

Network NetworkBuilder::build(std::size_t slot) && {
  if (nodes_.empty()) throw EmptyNetworkError("network has no nodes");
  if (links_.empty()) throw EmptyNetworkError("network has no links");
  if (slot >= slot_count_) {
    throw RangeError("slot " + std::to_string(slot) + " out of range (" +
                     std::to_string(slot_count_) + " slots)");
  }
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
  for (const auto& l : links_) {
    if (!seen.emplace(l.from.value, l.to.value, l.id).second) {
      throw ParseError("duplicate link (from=" + std::to_string(l.from.value) +
                       ", to=" + std::to_string(l.to.value) +
                       ", id=" + std::to_string(l.id) + ")");
    }
  }
  Network net;
  bool identity = true;
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    net.external_.emplace_back(nodes_[i].id, NodeId{i});
    identity = identity && nodes_[i].id == i;
  }
  std::sort(net.external_.begin(), net.external_.end());
  for (std::size_t i = 1; i < net.external_.size(); ++i) {
    if (net.external_[i].first == net.external_[i - 1].first) {
      throw ParseError("duplicate node id " + std::to_string(net.external_[i].first));
    }
  }
  if (identity) net.external_.clear();
  net.slot_count_ = slot_count_;
  net.nodes_ = std::move(nodes_);
  net.links_ = std::move(links_);
  net.index(slot);
  return net;
}

bool is_strongly_connected(const Network& net) {
  const auto n = net.node_count();
  if (n == 0) return false;
  auto sweep = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const NodeId u{stack.back()};
      stack.pop_back();
      const auto adj = forward ? net.out_links(u) : net.in_links(u);
      for (const auto l : adj) {
        const auto& link = net.link(l);
        const auto v = forward ? link.to.value : link.from.value;
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return sweep(true) && sweep(false);
}

}  // namespace ecoroute
