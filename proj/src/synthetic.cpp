#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "ecoroute/error.hpp"
#include "ecoroute/network.hpp"

namespace ecoroute {
namespace {

constexpr double kBaseLat = 42.30;
constexpr double kBaseLon = -71.10;
constexpr double kFreeFlowChoices[] = {25, 30, 35, 40, 45, 55, 65};

// Speed-factor draw ranges, kept clear of the 0.5 / 0.75 category boundaries.
constexpr std::array<std::pair<double, double>, kCategoryCount> kBands = {{
    {0.25, 0.45},  // High
    {0.55, 0.70},  // Medium
    {0.80, 0.98},  // Low
}};

double round_to(double v, double step) { return std::round(v / step) * step; }

class LinkSampler {
 public:
  LinkSampler(const SyntheticSpec& spec, std::mt19937_64& rng)
      : slots_(spec.slots),
        rng_(rng),
        mix_(spec.category_mix.begin(), spec.category_mix.end()) {}

  LinkSpec draw(std::uint32_t from, std::uint32_t to) {
    LinkSpec s;
    s.from = from;
    s.to = to;
    s.length_mi = std::max(0.1, round_to(length_(rng_), 0.001));
    s.free_flow_mph = kFreeFlowChoices[free_flow_(rng_)];
    for (std::size_t k = 0; k < slots_; ++k) {
      const auto [lo, hi] = kBands[mix_(rng_)];
      const double factor = std::uniform_real_distribution<double>(lo, hi)(rng_);
      s.avg_mph.push_back(round_to(factor * s.free_flow_mph, 0.01));
    }
    return s;
  }

 private:
  std::size_t slots_;
  std::mt19937_64& rng_;
  std::discrete_distribution<std::size_t> mix_;
  std::uniform_real_distribution<double> length_{0.1, 2.0};
  std::uniform_int_distribution<std::size_t> free_flow_{
      0, std::size(kFreeFlowChoices) - 1};
};

void check_spec(const SyntheticSpec& spec) {
  if (spec.nodes < 2) throw ParameterError("synthetic network needs >= 2 nodes");
  if (spec.slots == 0) throw ParameterError("synthetic network needs >= 1 slot");
  double sum = 0.0;
  for (double p : spec.category_mix) {
    if (!(p >= 0.0)) throw ParameterError("category probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ParameterError("category probabilities must sum to 1");
  }
}

}  // namespace

Network generate_synthetic(const SyntheticSpec& spec) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);
  LinkSampler sampler(spec, rng);
  NetworkBuilder builder(spec.slots);
  const auto n = spec.nodes;

  if (spec.kind == SyntheticKind::Grid) {
    const auto width = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(n))));
    for (std::size_t i = 0; i < n; ++i) {
      builder.add_node(kBaseLat + 0.01 * static_cast<double>(i / width),
                       kBaseLon + 0.01 * static_cast<double>(i % width));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = static_cast<std::uint32_t>(i);
      if ((i + 1) % width != 0 && i + 1 < n) {
        builder.add_link(sampler.draw(a, a + 1));
        builder.add_link(sampler.draw(a + 1, a));
      }
      if (i + width < n) {
        const auto b = static_cast<std::uint32_t>(i + width);
        builder.add_link(sampler.draw(a, b));
        builder.add_link(sampler.draw(b, a));
      }
    }
    return std::move(builder).build(0);
  }

  const double target = static_cast<double>(n) * spec.avg_degree / 2.0;
  const auto links = static_cast<std::size_t>(std::llround(target));
  const auto max_links = n * (n - 1);
  if (!(spec.avg_degree >= 2.0) || links < n || links > max_links) {
    throw ParameterError("average degree " + std::to_string(spec.avg_degree) +
                         " infeasible for " + std::to_string(n) +
                         " nodes (need 2 <= degree <= 2*(nodes-1))");
  }

  std::uniform_real_distribution<double> jitter(0.0, 0.2);
  for (std::size_t i = 0; i < n; ++i) {
    builder.add_node(kBaseLat + jitter(rng), kBaseLon + jitter(rng));
  }

  // A random Hamiltonian cycle makes the graph strongly connected; the
  // remaining links are distinct random ordered pairs.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  std::unordered_set<std::uint64_t> used;
  used.reserve(links * 2);
  auto key = [](std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(links);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = order[i];
    const auto b = order[(i + 1) % n];
    if (used.insert(key(a, b)).second) pairs.emplace_back(a, b);
  }
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(n - 1));
  while (pairs.size() < links) {
    const auto a = pick(rng);
    const auto b = pick(rng);
    if (a == b || !used.insert(key(a, b)).second) continue;
    pairs.emplace_back(a, b);
  }
  for (const auto& [a, b] : pairs) builder.add_link(sampler.draw(a, b));
  return std::move(builder).build(0);
}

}  // namespace ecoroute
