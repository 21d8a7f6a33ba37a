#include <doctest.h>

#include <random>

#include "ecoroute/energy.hpp"
#include "ecoroute/error.hpp"
#include "fixtures.hpp"

using namespace ecoroute;

namespace {

const EnergyParams kDefaults{};

// Expected values below were computed independently from the drive-cycle
// table (mu_cd 3.14/4.39/4.14 mi/kWh, mu_cs 28.88/49.03/47.11 mi/gal) and the
// prices 2.75 $/gal, 0.114 $/kWh.
constexpr double kCsLow = 0.05837401825514753;
constexpr double kCsHigh = 0.09522160664819945;
constexpr double kRateHigh = 0.18499584487534626;
constexpr double kRateMedium = 0.1322267999184173;
constexpr double kRateLow = 0.12766843557631075;

}  // namespace

TEST_CASE("default parameters match the drive-cycle table") {
  CHECK(kDefaults.c_gas == 2.75);
  CHECK(kDefaults.c_ele == 0.114);
  CHECK(kDefaults.cd_efficiency(TrafficCategory::Low) == 4.14);
  CHECK(kDefaults.cd_efficiency(TrafficCategory::Medium) == 4.39);
  CHECK(kDefaults.cd_efficiency(TrafficCategory::High) == 3.14);
  CHECK(kDefaults.cs_efficiency(TrafficCategory::Low) == 47.11);
  CHECK(kDefaults.cs_efficiency(TrafficCategory::Medium) == 49.03);
  CHECK(kDefaults.cs_efficiency(TrafficCategory::High) == 28.88);
}

TEST_CASE("cs_cost") {
  CHECK(cs_cost(1, TrafficCategory::Low, kDefaults) == doctest::Approx(kCsLow).epsilon(1e-12));
  CHECK(cs_cost(1, TrafficCategory::High, kDefaults) == doctest::Approx(kCsHigh).epsilon(1e-12));
  CHECK(cs_cost(1e-9, TrafficCategory::Medium, kDefaults) ==
        doctest::Approx(1e-9 * cs_cost(1, TrafficCategory::Medium, kDefaults)));
}

TEST_CASE("cd_cost") {
  const auto medium = cd_cost(1, TrafficCategory::Medium, kDefaults);
  CHECK(medium.dollars == doctest::Approx(0.025968109339407748).epsilon(1e-12));
  CHECK(medium.kwh == doctest::Approx(0.22779043280182235).epsilon(1e-12));
  const auto high = cd_cost(1, TrafficCategory::High, kDefaults);
  CHECK(high.dollars == doctest::Approx(0.03630573248407643).epsilon(1e-12));
  CHECK(high.kwh == doctest::Approx(0.3184713375796178).epsilon(1e-12));
  const auto two = cd_cost(2, TrafficCategory::Low, kDefaults);
  const auto one = cd_cost(1, TrafficCategory::Low, kDefaults);
  CHECK(two.dollars == doctest::Approx(2 * one.dollars));
  CHECK(two.kwh == doctest::Approx(2 * one.kwh));
}

TEST_CASE("cdf_link_cost cases") {
  const auto mixed = cdf_link_cost(2, TrafficCategory::High, 0.3, kDefaults);
  CHECK(mixed.dollars == doctest::Approx(0.13494445983379502).epsilon(1e-12));
  CHECK(mixed.residual_kwh == 0.0);

  const auto gas = cdf_link_cost(1, TrafficCategory::Low, 0.0, kDefaults);
  CHECK(gas.dollars == doctest::Approx(kCsLow).epsilon(1e-12));
  CHECK(gas.residual_kwh == 0.0);

  const auto ele = cdf_link_cost(1, TrafficCategory::Low, 10.0, kDefaults);
  CHECK(ele.dollars == doctest::Approx(0.027536231884057974).epsilon(1e-12));
  CHECK(ele.residual_kwh == doctest::Approx(10.0 - 1.0 / 4.14).epsilon(1e-12));

  CHECK_THROWS_AS(cdf_link_cost(1, TrafficCategory::Low, -0.1, kDefaults), DomainError);
}

TEST_CASE("savings_rate") {
  CHECK(savings_rate(TrafficCategory::High, kDefaults) == doctest::Approx(kRateHigh).epsilon(1e-12));
  CHECK(savings_rate(TrafficCategory::Medium, kDefaults) == doctest::Approx(kRateMedium).epsilon(1e-12));
  CHECK(savings_rate(TrafficCategory::Low, kDefaults) == doctest::Approx(kRateLow).epsilon(1e-12));
  // The per-kWh saving is largest in High traffic even though CD efficiency
  // (mi/kWh) is largest in Medium traffic.
  CHECK(kRateHigh > kRateMedium);
  EnergyParams dear = kDefaults;
  dear.c_ele = 1.0;
  CHECK(savings_rate(TrafficCategory::Low, dear) < 0.0);
}

TEST_CASE("cdf_link_cost is continuous at both breakpoints") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> len(0.01, 5.0);
  std::uniform_real_distribution<double> price(0.5, 6.0);
  std::uniform_real_distribution<double> ele(0.02, 0.6);
  std::uniform_int_distribution<int> cat(0, 2);
  for (int i = 0; i < 2000; ++i) {
    EnergyParams p;
    p.c_gas = price(rng);
    p.c_ele = ele(rng);
    const double d = len(rng);
    const auto c = static_cast<TrafficCategory>(cat(rng));
    const double need = d / p.cd_efficiency(c);
    const double mixed_at_full = p.c_ele * need + p.c_gas * (d - p.cd_efficiency(c) * need) / p.cs_efficiency(c);
    CHECK(std::abs(mixed_at_full - cdf_link_cost(d, c, need, p).dollars) <= 1e-12);
    const double tiny = 1e-15;
    CHECK(std::abs(cdf_link_cost(d, c, tiny, p).dollars - cs_cost(d, c, p)) <= 1e-12);
  }
}

TEST_CASE("cdf_link_cost is non-increasing in residual energy") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> len(0.05, 3.0);
  std::uniform_int_distribution<int> cat(0, 2);
  for (int i = 0; i < 500; ++i) {
    const double d = len(rng);
    const auto c = static_cast<TrafficCategory>(cat(rng));
    double prev = cdf_link_cost(d, c, 0.0, kDefaults).dollars;
    for (int k = 1; k <= 50; ++k) {
      const double e = k * 0.02;
      const double now = cdf_link_cost(d, c, e, kDefaults).dollars;
      CHECK(now <= prev + 1e-15);
      prev = now;
    }
  }
}

TEST_CASE("evaluate_route") {
  NetworkBuilder b;
  b.add_nodes(3);
  b.add_link(0, 1, 1.0, 70.0, 30.0);  // High
  b.add_link(1, 2, 1.0, 40.0, 40.0);  // Low
  const auto net = std::move(b).build();
  const std::vector<LinkId> path{LinkId{0}, LinkId{1}};

  const auto gas = evaluate_route(net, path, std::vector<double>{0, 0}, kDefaults);
  CHECK(gas.kwh_used == 0.0);
  CHECK(gas.electricity_dollars == 0.0);
  CHECK(gas.total_dollars == doctest::Approx(kCsHigh + kCsLow).epsilon(1e-12));

  const auto ele = evaluate_route(net, path, std::vector<double>{1, 1}, kDefaults);
  CHECK(ele.gallons_used == 0.0);
  CHECK(ele.gas_dollars == 0.0);

  const auto split = evaluate_route(net, path, std::vector<double>{0.942, 0}, kDefaults);
  CHECK(split.total_dollars == doctest::Approx(0.09809687144074311).epsilon(1e-9));
  CHECK(split.kwh_used == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(split.total_dollars -
                 (kDefaults.c_gas * split.gallons_used + kDefaults.c_ele * split.kwh_used)) <= 1e-9);

  CHECK_THROWS_AS(evaluate_route(net, path, std::vector<double>{1.2, 0}, kDefaults), DomainError);
  const std::vector<LinkId> broken{LinkId{1}, LinkId{0}};
  CHECK_THROWS_AS(evaluate_route(net, broken, std::vector<double>{0, 0}, kDefaults),
                  StructuralError);
}

TEST_CASE("evaluate_route slope in y matches the savings rate") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = testing::random_small(seed);
    std::vector<LinkId> path;
    auto node = NodeId{0};
    for (int k = 0; k < 5; ++k) {
      const auto out = net.out_links(node);
      path.push_back(out[k % out.size()]);
      node = net.link(path.back()).to;
    }
    std::vector<double> y(path.size(), 0.4);
    const double base = evaluate_route(net, path, y, kDefaults).total_dollars;
    for (std::size_t k = 0; k < path.size(); ++k) {
      auto bumped = y;
      bumped[k] += 0.25;
      const double slope =
          (evaluate_route(net, path, bumped, kDefaults).total_dollars - base) / 0.25;
      const auto c = net.category(path[k]);
      const double expected =
          -savings_rate(c, kDefaults) * net.length(path[k]) / kDefaults.cd_efficiency(c);
      CHECK(std::abs(slope - expected) <= 1e-9);
    }
  }
}

TEST_CASE("energy params JSON override") {
  const auto p = parse_energy_params(
      R"({"c_gas": 3.5, "mu_cd": {"medium": 5.0}, "mu_cs": {"high": 30}})");
  CHECK(p.c_gas == 3.5);
  CHECK(p.c_ele == 0.114);
  CHECK(p.cd_efficiency(TrafficCategory::Medium) == 5.0);
  CHECK(p.cd_efficiency(TrafficCategory::High) == 3.14);
  CHECK(p.cs_efficiency(TrafficCategory::High) == 30.0);
  CHECK_THROWS_AS(parse_energy_params(R"({"c_gas": -1})"), DomainError);
  CHECK_THROWS_AS(parse_energy_params(R"({"c_gas": "x"})"), ParseError);
  CHECK_THROWS_AS(parse_energy_params("{"), ParseError);
}
