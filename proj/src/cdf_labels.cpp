#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>

#include "ecoroute/error.hpp"
#include "search_detail.hpp"

namespace ecoroute::detail {
namespace {

struct CdfLabel {
  std::uint32_t node;
  double cost;
  double residual;
  std::int64_t parent;  // -1 at the origin
  LinkId via;
  bool alive = true;
};

class CdfLabelStore {
 public:
  CdfLabelStore(std::size_t nodes, double residual_penalty)
      : buckets_(nodes), penalty_(residual_penalty) {}

  const CdfLabel& operator[](std::size_t i) const { return labels_[i]; }

  bool on_path(std::int64_t label, std::uint32_t node) const {
    for (; label >= 0; label = labels_[label].parent) {
      if (labels_[label].node == node) return true;
    }
    return false;
  }

  // Inserts unless dominated; returns the new index or -1.
  std::int64_t insert(CdfLabel label) {
    auto& bucket = buckets_[label.node];
    for (const auto i : bucket) {
      if (dominates(labels_[i], label)) return -1;
    }
    std::erase_if(bucket, [&](std::size_t i) {
      if (!dominates(label, labels_[i])) return false;
      labels_[i].alive = false;
      return true;
    });
    labels_.push_back(label);
    bucket.push_back(labels_.size() - 1);
    return static_cast<std::int64_t>(labels_.size() - 1);
  }

  std::vector<LinkId> links_to(std::int64_t label) const {
    std::vector<LinkId> links;
    for (; labels_[label].parent >= 0; label = labels_[label].parent) {
      links.push_back(labels_[label].via);
    }
    std::reverse(links.begin(), links.end());
    return links;
  }

 private:
  // A is at least as cheap and holds at least as much charge. When some
  // category has a negative savings rate, extra charge can cost money later,
  // so A's surplus is charged at the worst such rate.
  bool dominates(const CdfLabel& a, const CdfLabel& b) const {
    if (a.residual < b.residual - kDominanceTol) return false;
    const double surplus = std::max(0.0, a.residual - b.residual);
    return a.cost + penalty_ * surplus <= b.cost + kDominanceTol;
  }

  std::vector<CdfLabel> labels_;
  std::vector<std::vector<std::size_t>> buckets_;
  double penalty_;
};

}  // namespace

RouteSolution cdf_label_search(const Network& net, const Query& q,
                               const EnergyParams& p, ObjectiveWeights w,
                               std::string algorithm) {
  if (q.origin == q.destination) {
    return trivial_solution(net, q, p, std::move(algorithm));
  }
  double worst_rate = 0.0;
  for (auto c : kAllCategories) worst_rate = std::min(worst_rate, savings_rate(c, p));
  CdfLabelStore store(net.node_count(), -worst_rate * w.energy);

  // (cost, node, label): equal costs pop in ascending node id, then in
  // discovery order.
  using Entry = std::tuple<double, std::uint32_t, std::int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  const auto root = store.insert(
      CdfLabel{q.origin.value, 0.0, q.budget_kwh, -1, LinkId{}, true});
  queue.emplace(0.0, q.origin.value, root);

  while (!queue.empty()) {
    const auto [cost, u, index] = queue.top();
    queue.pop();
    const CdfLabel label = store[index];
    if (!label.alive) continue;
    if (u == q.destination.value) {
      auto links = store.links_to(index);
      auto y = cdf_policy(net, links, q.budget_kwh, p);
      return make_solution(net, q.origin, std::move(links), std::move(y), p,
                           std::move(algorithm));
    }
    for (const auto l : net.out_links(NodeId{u})) {
      const auto v = net.link(l).to.value;
      if (store.on_path(index, v)) continue;
      const auto step =
          cdf_link_cost(net.length(l), net.category(l), label.residual, p);
      const double next =
          cost + w.time * net.travel_time(l) + w.energy * step.dollars;
      const auto added =
          store.insert(CdfLabel{v, next, step.residual_kwh, index, l, true});
      if (added >= 0) queue.emplace(next, v, added);
    }
  }
  throw NoRouteError("destination unreachable from origin");
}

}  // namespace ecoroute::detail
