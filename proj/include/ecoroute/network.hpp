#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ecoroute {

struct NodeId {
  std::uint32_t value{};
  friend auto operator<=>(NodeId, NodeId) = default;
};

struct LinkId {
  std::uint32_t value{};
  friend auto operator<=>(LinkId, LinkId) = default;
};

// Congestion class of a link. Each class is mapped to one standard drive
// cycle: High -> NYC, Medium -> UDDS, Low -> HWFET.
enum class TrafficCategory : std::uint8_t { High = 0, Medium = 1, Low = 2 };

inline constexpr std::size_t kCategoryCount = 3;
inline constexpr std::array<TrafficCategory, kCategoryCount> kAllCategories = {
    TrafficCategory::High, TrafficCategory::Medium, TrafficCategory::Low};

constexpr std::size_t index_of(TrafficCategory c) {
  return static_cast<std::size_t>(c);
}

std::string_view to_string(TrafficCategory c);
std::optional<TrafficCategory> category_from_string(std::string_view name);

// Speed factor S = avg / free_flow. S <= 0.5 is High, S >= 0.75 is Low and
// everything strictly in between is Medium. Throws DomainError on
// non-positive speeds.
TrafficCategory categorize_link(double avg_speed_mph, double free_flow_mph);

struct Node {
  std::optional<double> lat;
  std::optional<double> lon;
  std::uint32_t id{};  // external identifier; equals the dense index unless the file said otherwise
};

struct Link {
  std::uint32_t id{};  // external identifier, unique per network
  NodeId from;
  NodeId to;
  double length_mi{};
  double free_flow_mph{};
  std::vector<double> avg_mph;  // one entry per time slot, clamped to free flow
};

// Input record for NetworkBuilder / load_network before validation.
struct LinkSpec {
  std::optional<std::uint32_t> id;
  std::uint32_t from{};
  std::uint32_t to{};
  double length_mi{};
  double free_flow_mph{};
  std::vector<double> avg_mph;
};

// Immutable directed road graph bound to one active time slot. Links are
// addressed by dense LinkId (position), nodes by dense NodeId.
class Network {
 public:
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  std::size_t slot_count() const { return slot_count_; }
  std::size_t slot() const { return slot_; }

  const Node& node(NodeId n) const { return nodes_[n.value]; }
  const Link& link(LinkId l) const { return links_[l.value]; }
  std::span<const Link> links() const { return links_; }
  std::span<const Node> nodes() const { return nodes_; }

  // O(i) and I(i): outgoing / incoming link ids of a node, ascending.
  std::span<const LinkId> out_links(NodeId n) const;
  std::span<const LinkId> in_links(NodeId n) const;

  TrafficCategory category(LinkId l) const { return category_[l.value]; }
  double avg_speed(LinkId l) const { return links_[l.value].avg_mph[slot_]; }
  double length(LinkId l) const { return links_[l.value].length_mi; }
  // Traversal time in hours at the active slot's average speed.
  double travel_time(LinkId l) const { return length(l) / avg_speed(l); }

  bool has_coordinates() const;
  bool contains(NodeId n) const { return n.value < nodes_.size(); }
  // Dense id of the node with this external id.
  std::optional<NodeId> find_node(std::uint32_t external_id) const;

  // Same topology and speeds, categorized for another slot.
  Network with_slot(std::size_t slot) const;

 private:
  friend class NetworkBuilder;
  Network() = default;
  void index(std::size_t slot);

  std::size_t slot_count_ = 1;
  std::size_t slot_ = 0;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<TrafficCategory> category_;
  std::vector<std::size_t> out_offset_;
  std::vector<LinkId> out_;
  std::vector<std::size_t> in_offset_;
  std::vector<LinkId> in_;
  // (external id, dense id) sorted by external id; empty when they coincide.
  std::vector<std::pair<std::uint32_t, NodeId>> external_;
};

// Validates and assembles a Network. Average speeds above free flow are
// clamped; each clamp appends a message to warnings().
class NetworkBuilder {
 public:
  explicit NetworkBuilder(std::size_t slot_count = 1);

  NodeId add_node(std::optional<double> lat = std::nullopt,
                  std::optional<double> lon = std::nullopt);
  NodeId add_node(std::uint32_t external_id, std::optional<double> lat,
                  std::optional<double> lon);
  void add_nodes(std::size_t count);
  LinkId add_link(LinkSpec spec);
  // Convenience for a single-slot network.
  LinkId add_link(std::uint32_t from, std::uint32_t to, double length_mi,
                  double free_flow_mph, double avg_mph);

  const std::vector<std::string>& warnings() const { return warnings_; }

  Network build(std::size_t slot = 0) &&;

 private:
  std::size_t slot_count_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::string> warnings_;
};

// JSON network file (see README for the schema). Warnings about clamped
// speeds are appended to `warnings` when given, otherwise printed to stderr.
Network parse_network(std::string_view text, std::size_t slot,
                      std::vector<std::string>* warnings = nullptr);
Network load_network(const std::string& path, std::size_t slot,
                     std::vector<std::string>* warnings = nullptr);
// CSV variant: header from,to,length_mi,free_flow_mph,avg_mph; one slot.
Network parse_network_csv(std::string_view text,
                          std::vector<std::string>* warnings = nullptr);

// Canonical JSON encoding; parse_network(serialize_network(n)) round-trips.
std::string serialize_network(const Network& net);
void save_network(const Network& net, const std::string& path);

enum class SyntheticKind { Grid, Random };

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::Random;
  std::size_t nodes = 100;
  // Mean total (in + out) degree; the link count is nodes * avg_degree / 2.
  double avg_degree = 4.0;
  std::array<double, kCategoryCount> category_mix = {1.0 / 3, 1.0 / 3,
                                                     1.0 / 3};
  std::uint64_t seed = 1;
  std::size_t slots = 1;
};

// Deterministic, strongly connected synthetic network. Lengths are drawn from
// [0.1, 2.0] miles; speeds fall inside the drawn category's speed-factor band.
Network generate_synthetic(const SyntheticSpec& spec);

// True when every node reaches and is reached by node 0.
bool is_strongly_connected(const Network& net);

}  // namespace ecoroute
