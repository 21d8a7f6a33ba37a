#include "ecoroute/crptc.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <queue>
#include <tuple>

#include "ecoroute/error.hpp"
#include "search_detail.hpp"

namespace ecoroute {

KnapsackSplit knapsack_split(const Network& net, std::span<const LinkId> path,
                             double budget_kwh, const EnergyParams& p) {
  if (!(budget_kwh >= 0.0)) throw DomainError("budget must be >= 0");
  check_contiguous(net, path);
  KnapsackSplit split{std::vector<double>(path.size(), 0.0),
                      std::vector<double>(path.size(), 0.0), 0.0};

  std::vector<std::size_t> order(path.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> rate(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    rate[k] = savings_rate(net.category(path[k]), p);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rate[a] > rate[b]; });

  double left = budget_kwh;
  for (const auto k : order) {
    if (rate[k] <= 0.0 || left <= 0.0) break;
    const double need = link_cd_kwh(net, path[k], p);
    const double take = std::min(need, left);
    split.kwh_allocated[k] = take;
    split.y[k] = take >= need ? 1.0 : take / need;
    split.total_savings += rate[k] * take;
    left -= take;
  }
  return split;
}

RouteSolution bilevel_route(const Network& net, const Query& q,
                            const EnergyParams& p) {
  const auto start = std::chrono::steady_clock::now();
  auto upper = cdf_dijkstra(net, q, p);
  auto split = knapsack_split(net, upper.links, q.budget_kwh, p);
  auto s = make_solution(net, q.origin, std::move(upper.links),
                         std::move(split.y), p, "bilevel");
  s.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

namespace detail {
namespace {

using Capacity = std::array<double, kCategoryCount>;

struct CrptcLabel {
  std::uint32_t node;
  double base;  // weighted gasoline-only cost (plus time) of the prefix
  Capacity capacity;
  std::int64_t parent;
  LinkId via;
  bool alive = true;
};

// Savings obtainable from per-category CD capacity with the given budget:
// fill the categories in descending savings rate.
class CapacityValuer {
 public:
  CapacityValuer(const EnergyParams& p, double budget) : budget_(budget) {
    for (auto c : kAllCategories) rate_[index_of(c)] = savings_rate(c, p);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return rate_[a] > rate_[b]; });
  }

  double savings(const Capacity& cap) const {
    double left = budget_;
    double total = 0.0;
    for (const auto k : order_) {
      if (rate_[k] <= 0.0 || left <= 0.0) break;
      const double take = std::min(cap[k], left);
      total += rate_[k] * take;
      left -= take;
    }
    return total;
  }

  double rate(std::size_t k) const { return rate_[k]; }

 private:
  double budget_;
  Capacity rate_{};
  std::array<std::size_t, kCategoryCount> order_{};
};

bool dominates(const CrptcLabel& a, const CrptcLabel& b) {
  if (a.base > b.base + kDominanceTol) return false;
  for (std::size_t k = 0; k < kCategoryCount; ++k) {
    if (a.capacity[k] < b.capacity[k] - kDominanceTol) return false;
  }
  return true;
}

}  // namespace

RouteSolution crptc_label_search(const Network& net, const Query& q,
                                 const EnergyParams& p, ObjectiveWeights w,
                                 std::string algorithm) {
  if (q.origin == q.destination) {
    return trivial_solution(net, q, p, std::move(algorithm));
  }
  const CapacityValuer valuer(p, q.budget_kwh);
  const bool uses_battery = w.energy > 0.0 && q.budget_kwh > 0.0;

  auto link_base = [&](LinkId l) {
    return w.time * net.travel_time(l) + w.energy * link_cs_cost(net, l, p);
  };
  // Cheapest possible weighted cost of a link: all-CD when that is cheaper.
  auto link_floor = [&](LinkId l) {
    const auto cat = net.category(l);
    const double energy = std::min(cs_cost(net.length(l), cat, p),
                                   cd_cost(net.length(l), cat, p).dollars);
    return w.time * net.travel_time(l) + w.energy * energy;
  };
  // Admissible and consistent remaining-cost bound.
  const auto to_go = dijkstra(net, q.destination, link_floor, Direction::Backward);
  if (to_go.dist[q.origin.value] == kInf) {
    throw NoRouteError("destination unreachable from origin");
  }

  std::vector<CrptcLabel> labels;
  std::vector<std::vector<std::size_t>> buckets(net.node_count());
  auto value = [&](const CrptcLabel& l) {
    return l.base - w.energy * valuer.savings(l.capacity);
  };
  auto on_path = [&](std::int64_t label, std::uint32_t node) {
    for (; label >= 0; label = labels[label].parent) {
      if (labels[label].node == node) return true;
    }
    return false;
  };

  // Incumbent: the single-label CDF route with its optimal split, valued
  // under this objective.
  double incumbent = kInf;
  {
    const auto seed = cdf_dijkstra(net, q, p);
    const auto split = knapsack_split(net, seed.links, q.budget_kwh, p);
    const auto b = evaluate_route(net, seed.links, split.y, p);
    incumbent = w.time * seed.travel_time_h + w.energy * b.total_dollars;
  }

  using Entry = std::tuple<double, std::uint32_t, std::int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  auto push = [&](CrptcLabel label) {
    const double bound = value(label) + to_go.dist[label.node];
    if (bound > incumbent + kDominanceTol) return;
    auto& bucket = buckets[label.node];
    for (const auto i : bucket) {
      if (dominates(labels[i], label)) return;
    }
    std::erase_if(bucket, [&](std::size_t i) {
      if (!dominates(label, labels[i])) return false;
      labels[i].alive = false;
      return true;
    });
    labels.push_back(label);
    bucket.push_back(labels.size() - 1);
    queue.emplace(bound, label.node, static_cast<std::int64_t>(labels.size() - 1));
  };

  push(CrptcLabel{q.origin.value, 0.0, Capacity{}, -1, LinkId{}, true});
  while (!queue.empty()) {
    const auto [bound, u, index] = queue.top();
    queue.pop();
    const CrptcLabel label = labels[index];
    if (!label.alive) continue;
    if (u == q.destination.value) {
      std::vector<LinkId> links;
      for (auto i = index; labels[i].parent >= 0; i = labels[i].parent) {
        links.push_back(labels[i].via);
      }
      std::reverse(links.begin(), links.end());
      auto split = knapsack_split(net, links, q.budget_kwh, p);
      return make_solution(net, q.origin, std::move(links), std::move(split.y),
                           p, std::move(algorithm));
    }
    for (const auto l : net.out_links(NodeId{u})) {
      const auto v = net.link(l).to.value;
      if (on_path(index, v)) continue;
      CrptcLabel next{v, label.base + link_base(l), label.capacity, index, l, true};
      if (uses_battery) {
        const auto k = index_of(net.category(l));
        if (valuer.rate(k) > 0.0) {
          // Capacity beyond the budget can never be used.
          next.capacity[k] =
              std::min(q.budget_kwh, next.capacity[k] + link_cd_kwh(net, l, p));
        }
      }
      push(next);
    }
  }
  // Only reachable if the incumbent bound pruned everything, which means the
  // incumbent is optimal within tolerance.
  const auto seed = cdf_dijkstra(net, q, p);
  auto split = knapsack_split(net, seed.links, q.budget_kwh, p);
  return make_solution(net, q.origin, seed.links, std::move(split.y), p,
                       std::move(algorithm));
}

}  // namespace detail

RouteSolution crptc_exact(const Network& net, const Query& q,
                          const EnergyParams& p) {
  const auto start = std::chrono::steady_clock::now();
  validate_query(net, q, p);
  auto s = detail::crptc_label_search(net, q, p, {0.0, 1.0}, "crptc");
  s.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace ecoroute
