#include <doctest.h>

#include <set>

#include "ecoroute/error.hpp"
#include "ecoroute/oracle.hpp"
#include "ecoroute/routing.hpp"
#include "fixtures.hpp"
#include "../src/search_detail.hpp"

using namespace ecoroute;
using testing::close_rel;

namespace {

const EnergyParams kDefaults{};

Query make_query(std::uint32_t o, std::uint32_t d, double budget) {
  Query q;
  q.origin = NodeId{o};
  q.destination = NodeId{d};
  q.budget_kwh = budget;
  return q;
}

void check_solution_shape(const Network& net, const Query& q, const RouteSolution& s) {
  REQUIRE(s.nodes.size() == s.links.size() + 1);
  CHECK(s.nodes.front() == q.origin);
  CHECK(s.nodes.back() == q.destination);
  std::set<std::uint32_t> seen;
  for (const auto n : s.nodes) CHECK(seen.insert(n.value).second);
  for (std::size_t k = 0; k < s.links.size(); ++k) {
    CHECK(net.link(s.links[k]).from == s.nodes[k]);
    CHECK(net.link(s.links[k]).to == s.nodes[k + 1]);
  }
  CHECK(s.breakdown.kwh_used <= q.budget_kwh + 1e-9);
}

double all_cd_kwh_route(const Network& net, const Query& q) {
  const auto tree = detail::dijkstra(
      net, q.origin, [&](LinkId l) { return link_cd_kwh(net, l, kDefaults); },
      detail::Direction::Forward, q.destination);
  return tree.dist[q.destination.value];
}

}  // namespace

TEST_CASE("fastest_route basics") {
  SUBCASE("single link") {
    const auto net = testing::single_link(2.0, 40.0, 30.0);
    const auto s = fastest_route(net, make_query(0, 1, 0.0));
    REQUIRE(s.links.size() == 1);
    CHECK(s.travel_time_h == doctest::Approx(2.0 / 30.0));
  }
  SUBCASE("origin equals destination") {
    const auto net = testing::diamond();
    const auto s = fastest_route(net, make_query(2, 2, 1.0));
    CHECK(s.links.empty());
    CHECK(s.nodes.size() == 1);
    CHECK(s.travel_time_h == 0.0);
    CHECK(s.breakdown.total_dollars == 0.0);
  }
  SUBCASE("diamond takes the faster bottom path") {
    const auto net = testing::diamond();
    for (double budget : {0.0, 0.3, 5.0}) {
      const auto s = fastest_route(net, make_query(0, 3, budget));
      CHECK(s.links == std::vector<LinkId>{LinkId{2}, LinkId{3}});
      CHECK(s.travel_time_h == doctest::Approx(2.0 / 35.0));
    }
  }
  SUBCASE("unreachable") {
    NetworkBuilder b;
    b.add_nodes(3);
    b.add_link(0, 1, 1, 40, 40);
    const auto net = std::move(b).build();
    CHECK_THROWS_AS(fastest_route(net, make_query(1, 0, 0)), NoRouteError);
    CHECK_THROWS_AS(cdf_dijkstra(net, make_query(0, 2, 0)), NoRouteError);
    CHECK_THROWS_AS(cdf_exact(net, make_query(0, 2, 0)), NoRouteError);
    CHECK_THROWS_AS(hybrid_lp_route(net, make_query(0, 2, 0)), NoRouteError);
  }
}

TEST_CASE("query validation") {
  const auto net = testing::diamond();
  CHECK_THROWS_AS(cdf_exact(net, make_query(0, 9, 0)), RangeError);
  CHECK_THROWS_AS(cdf_exact(net, make_query(0, 3, -1)), DomainError);
  auto q = make_query(0, 3, 0);
  q.slot = 1;
  CHECK_THROWS_AS(cdf_dijkstra(net, q), RangeError);
  q.slot = 0;
  q.alpha = 1.5;
  CHECK_THROWS_AS(weighted_route(net, q, WeightedAlgorithm::Cdf), DomainError);
  q.alpha = 0.5;
  q.beta_time = 1e-6;
  CHECK_THROWS_AS(weighted_route(net, q, WeightedAlgorithm::Cdf), DomainError);
}

TEST_CASE("cdf solvers on the diamond") {
  const auto net = testing::diamond();
  const auto q = make_query(0, 3, 0.3);
  const double top_cost = 0.07844750583740183;
  for (const auto& s : {cdf_dijkstra(net, q), cdf_exact(net, q), hybrid_lp_route(net, q)}) {
    CHECK(s.links == std::vector<LinkId>{LinkId{0}, LinkId{1}});
    CHECK(s.objective == doctest::Approx(top_cost).epsilon(1e-9));
    check_solution_shape(net, q, s);
  }
}

TEST_CASE("cdf_dijkstra degenerate budgets reduce to plain Dijkstra") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto net = testing::random_small(seed);
    auto q = testing::random_query(net, seed, 0.0);
    const auto gas = detail::dijkstra(
        net, q.origin, [&](LinkId l) { return link_cs_cost(net, l, kDefaults); });
    const auto s0 = cdf_dijkstra(net, q);
    CHECK(s0.links == detail::path_to(net, gas, q.origin, q.destination));
    CHECK(close_rel(s0.objective, gas.dist[q.destination.value], 1e-12));

    const auto ele = detail::dijkstra(
        net, q.origin, [&](LinkId l) { return cd_cost(net.length(l), net.category(l), kDefaults).dollars; });
    // Enough charge for every simple path.
    double total = 0.0;
    for (std::uint32_t l = 0; l < net.link_count(); ++l) total += link_cd_kwh(net, LinkId{l}, kDefaults);
    q.budget_kwh = total;
    const auto sf = cdf_dijkstra(net, q);
    CHECK(sf.links == detail::path_to(net, ele, q.origin, q.destination));
    CHECK(close_rel(sf.objective, ele.dist[q.destination.value], 1e-12));
  }
}

TEST_CASE("single-label CDF search keeps the cost-optimal label") {
  // While the battery lasts a prefix costs c_ele * (budget - residual), and
  // once it is empty the prefix costs at least c_ele * budget. Cheaper prefixes
  // therefore never hold less charge, so one label per node loses nothing.
  NetworkBuilder b;
  b.add_nodes(5);
  b.add_link(0, 2, 1.0, 70, 30);
  b.add_link(0, 1, 0.5, 40, 40);
  b.add_link(1, 2, 0.6, 40, 40);
  b.add_link(2, 3, 2.0, 70, 30);
  b.add_link(3, 4, 0.2, 40, 40);
  b.add_link(1, 3, 2.6, 50, 30);
  const auto net = std::move(b).build();
  for (double budget : {0.0, 0.1, 0.25, 0.3, 0.5, 0.9, 2.0}) {
    const auto q = make_query(0, 4, budget);
    const auto fast = cdf_dijkstra(net, q);
    const auto referee = oracle::oracle_cdf(net, q);
    INFO("budget ", budget);
    CHECK(close_rel(fast.objective, referee.objective, 1e-9));
  }
}

TEST_CASE("cdf_exact matches the brute-force oracle") {
  std::size_t divergent = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto net = testing::random_small(seed, 10);
    for (double budget : {0.0, 0.1, 0.3, 1.0}) {
      const auto q = testing::random_query(net, seed, budget);
      const auto exact = cdf_exact(net, q);
      const auto referee = oracle::oracle_cdf(net, q);
      INFO("seed ", seed, " budget ", budget);
      CHECK(close_rel(exact.objective, referee.objective, 1e-9));
      check_solution_shape(net, q, exact);
      const auto hybrid = hybrid_lp_route(net, q);
      CHECK(close_rel(hybrid.objective, exact.objective, 1e-9));
      check_solution_shape(net, q, hybrid);
      const auto single = cdf_dijkstra(net, q);
      CHECK(exact.objective <= single.objective + 1e-12);
      if (single.objective > exact.objective * (1 + 1e-9)) ++divergent;
    }
  }
  MESSAGE("single-label CDF suboptimal on ", divergent, " of 800 queries");
}

TEST_CASE("cdf_exact cost is non-increasing in budget") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto net = testing::random_small(seed);
    auto q = testing::random_query(net, seed, 0.0);
    double prev = cdf_exact(net, q).objective;
    for (int k = 1; k <= 20; ++k) {
      q.budget_kwh = 0.1 * k;
      const double now = cdf_exact(net, q).objective;
      CHECK(now <= prev + 1e-12);
      prev = now;
    }
  }
}

TEST_CASE("hybrid_lp_route special branches") {
  const auto net = testing::diamond();
  SUBCASE("zero budget is gasoline-only Dijkstra") {
    const auto s = hybrid_lp_route(net, make_query(0, 3, 0.0));
    CHECK(s.links == std::vector<LinkId>{LinkId{0}, LinkId{1}});
    CHECK(s.objective == doctest::Approx(2 * 0.05837401825514753).epsilon(1e-12));
  }
  SUBCASE("battery never runs out") {
    const auto s = hybrid_lp_route(net, make_query(0, 3, 10.0));
    CHECK(s.breakdown.gas_dollars == 0.0);
    CHECK(s.objective == doctest::Approx(2 * 0.114 / 4.14).epsilon(1e-12));
  }
  SUBCASE("node cap") {
    SyntheticSpec spec;
    spec.nodes = 30;
    const auto big = generate_synthetic(spec);
    HybridLpOptions options;
    options.node_cap = 20;
    CHECK_THROWS_AS(hybrid_lp_route(big, make_query(0, 5, 0.3), kDefaults, options),
                    CapacityError);
  }
}

TEST_CASE("weighted_route endpoints") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto net = testing::random_small(seed);
    auto q = testing::random_query(net, seed, 0.3);
    const auto fastest = fastest_route(net, q);
    q.alpha = 1.0;
    for (auto algo : {WeightedAlgorithm::Cdf, WeightedAlgorithm::Crptc}) {
      const auto s = weighted_route(net, q, algo);
      CHECK(close_rel(s.travel_time_h, fastest.travel_time_h, 1e-9));
    }
    q.alpha = 0.0;
    const auto eco = cdf_exact(net, q);
    const auto w = weighted_route(net, q, WeightedAlgorithm::Cdf);
    CHECK(close_rel(w.breakdown.total_dollars, eco.objective, 1e-9));
  }
}

TEST_CASE("weighted_route alpha sweep on the diamond") {
  const auto net = testing::diamond();
  auto q = make_query(0, 3, 0.3);
  for (auto algo : {WeightedAlgorithm::Cdf, WeightedAlgorithm::Crptc}) {
    double prev_time = 1e300;
    double prev_cost = -1.0;
    for (int k = 0; k <= 10; ++k) {
      q.alpha = 0.1 * k;
      const auto s = weighted_route(net, q, algo);
      CHECK(s.travel_time_h <= prev_time + 1e-12);
      CHECK(s.breakdown.total_dollars >= prev_cost - 1e-12);
      prev_time = s.travel_time_h;
      prev_cost = s.breakdown.total_dollars;
    }
    q.alpha = 0.0;
    CHECK(weighted_route(net, q, algo).links == std::vector<LinkId>{LinkId{0}, LinkId{1}});
    q.alpha = 1.0;
    CHECK(weighted_route(net, q, algo).links == std::vector<LinkId>{LinkId{2}, LinkId{3}});
  }
}

TEST_CASE("solvers are deterministic") {
  const auto net = testing::random_small(99);
  const auto q = testing::random_query(net, 99, 0.3);
  CHECK(cdf_exact(net, q).links == cdf_exact(net, q).links);
  CHECK(cdf_dijkstra(net, q).links == cdf_dijkstra(net, q).links);
  CHECK(hybrid_lp_route(net, q).links == hybrid_lp_route(net, q).links);
}

TEST_CASE("remove_cycles") {
  const auto net = testing::complete4();
  // Link ids of complete4: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,0) 4:(1,2) 5:(1,3) ...
  const std::vector<LinkId> walk{LinkId{0}, LinkId{4}, LinkId{6}, LinkId{2}};
  // 0 -> 1 -> 2 -> 0 -> 3 collapses to 0 -> 3.
  CHECK(net.link(LinkId{6}).from == NodeId{2});
  CHECK(net.link(LinkId{6}).to == NodeId{0});
  CHECK(remove_cycles(net, NodeId{0}, walk) == std::vector<LinkId>{LinkId{2}});
}

TEST_CASE("saturating budget makes every CDF solver all-electric") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto net = testing::random_small(seed);
    auto q = testing::random_query(net, seed, 0.0);
    q.budget_kwh = all_cd_kwh_route(net, q);
    const auto s = cdf_exact(net, q);
    CHECK(s.breakdown.gas_dollars == doctest::Approx(0.0).epsilon(1e-12));
  }
}
