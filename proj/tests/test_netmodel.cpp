#include <doctest.h>

#include <fstream>
#include <random>

#include "ecoroute/error.hpp"
#include "ecoroute/network.hpp"
#include "fixtures.hpp"

using namespace ecoroute;

namespace {

std::string two_node(const std::string& avg) {
  return R"({"slot_count": 1, "nodes": [{"id": 0}, {"id": 1}],
             "links": [{"from": 0, "to": 1, "length_mi": 1.5,
                        "free_flow_mph": 40, "avg_mph": [)" +
         avg + "]}]}";
}

}  // namespace

TEST_CASE("categorize_link boundaries") {
  CHECK(categorize_link(20, 40) == TrafficCategory::High);
  CHECK(categorize_link(30, 40) == TrafficCategory::Low);
  CHECK(categorize_link(26, 40) == TrafficCategory::Medium);
  CHECK(categorize_link(40, 40) == TrafficCategory::Low);
  CHECK(categorize_link(1, 40) == TrafficCategory::High);
  CHECK_THROWS_AS(categorize_link(0, 40), DomainError);
  CHECK_THROWS_AS(categorize_link(10, 0), DomainError);
  CHECK_THROWS_AS(categorize_link(-3, 40), DomainError);
}

TEST_CASE("categorize_link is idempotent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ff(10, 80);
  std::uniform_real_distribution<double> s(0.01, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double f = ff(rng);
    const double v = s(rng) * f;
    CHECK(categorize_link(v, f) == categorize_link(v, f));
  }
}

TEST_CASE("load smallest network") {
  const auto net = parse_network(two_node("30"), 0);
  CHECK(net.node_count() == 2);
  CHECK(net.link_count() == 1);
  CHECK(net.category(LinkId{0}) == TrafficCategory::Low);
  CHECK(net.out_links(NodeId{0}).size() == 1);
  CHECK(net.in_links(NodeId{1}).size() == 1);
  CHECK(net.in_links(NodeId{0}).empty());
}

TEST_CASE("speed above free flow is clamped with a warning") {
  std::vector<std::string> warnings;
  const auto text = R"({"slot_count": 1, "nodes": [{"id": 0}, {"id": 1}],
      "links": [{"from": 0, "to": 1, "length_mi": 1, "free_flow_mph": 40,
                 "avg_mph": [50]}]})";
  const auto net = parse_network(text, 0, &warnings);
  CHECK(net.avg_speed(LinkId{0}) == 40.0);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("clamped") != std::string::npos);
}

TEST_CASE("diamond fixture categories") {
  const auto net = load_network(ECOROUTE_TEST_DATA "/diamond.json", 0);
  CHECK(net.link_count() == 4);
  CHECK(net.category(LinkId{0}) == TrafficCategory::Low);
  CHECK(net.category(LinkId{1}) == TrafficCategory::Low);
  CHECK(net.category(LinkId{2}) == TrafficCategory::High);
  CHECK(net.category(LinkId{3}) == TrafficCategory::High);
  CHECK(net.has_coordinates());
}

TEST_CASE("load errors") {
  SUBCASE("syntax error reports the line") {
    try {
      parse_network("{\n\"slot_count\": 1,\n\"nodes\": [,]}", 0);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("missing field names the field") {
    const auto text = R"({"slot_count": 1, "nodes": [{"id": 0}, {"id": 1}],
        "links": [{"from": 0, "to": 1, "free_flow_mph": 40, "avg_mph": [30]}]})";
    try {
      parse_network(text, 0);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("$.links[0].length_mi") != std::string::npos);
    }
  }
  SUBCASE("slot out of range") {
    CHECK_THROWS_AS(parse_network(two_node("30"), 1), RangeError);
  }
  SUBCASE("empty sets") {
    CHECK_THROWS_AS(parse_network(R"({"slot_count":1,"nodes":[],"links":[]})", 0),
                    EmptyNetworkError);
    CHECK_THROWS_AS(
        parse_network(R"({"slot_count":1,"nodes":[{"id":0}],"links":[]})", 0),
        EmptyNetworkError);
  }
  SUBCASE("wrong number of slot speeds") {
    CHECK_THROWS_AS(parse_network(two_node("30, 20"), 0), ParseError);
  }
  SUBCASE("non-positive length") {
    const auto text = R"({"slot_count": 1, "nodes": [{"id": 0}, {"id": 1}],
        "links": [{"from": 0, "to": 1, "length_mi": 0, "free_flow_mph": 40,
                   "avg_mph": [30]}]})";
    CHECK_THROWS_AS(parse_network(text, 0), ParseError);
  }
  SUBCASE("self loop") {
    const auto text = R"({"slot_count": 1, "nodes": [{"id": 0}, {"id": 1}],
        "links": [{"from": 1, "to": 1, "length_mi": 1, "free_flow_mph": 40,
                   "avg_mph": [30]}]})";
    CHECK_THROWS_AS(parse_network(text, 0), ParseError);
  }
  SUBCASE("duplicate link triple") {
    const auto text = R"({"slot_count": 1, "nodes": [{"id": 0}, {"id": 1}],
        "links": [{"id": 4, "from": 0, "to": 1, "length_mi": 1, "free_flow_mph": 40, "avg_mph": [30]},
                  {"id": 4, "from": 0, "to": 1, "length_mi": 2, "free_flow_mph": 40, "avg_mph": [30]}]})";
    CHECK_THROWS_AS(parse_network(text, 0), ParseError);
  }
  SUBCASE("unknown endpoint") {
    const auto text = R"({"slot_count": 1, "nodes": [{"id": 0}, {"id": 1}],
        "links": [{"from": 0, "to": 9, "length_mi": 1, "free_flow_mph": 40, "avg_mph": [30]}]})";
    CHECK_THROWS_AS(parse_network(text, 0), ParseError);
  }
}

TEST_CASE("sparse node ids are renumbered densely") {
  const auto text = R"({"slot_count": 2, "nodes": [{"id": 100}, {"id": 7}],
      "links": [{"from": 100, "to": 7, "length_mi": 1, "free_flow_mph": 40,
                 "avg_mph": [10, 35]}]})";
  const auto net = parse_network(text, 1);
  CHECK(net.link(LinkId{0}).from == NodeId{0});
  CHECK(net.link(LinkId{0}).to == NodeId{1});
  CHECK(net.category(LinkId{0}) == TrafficCategory::Low);
  CHECK(net.with_slot(0).category(LinkId{0}) == TrafficCategory::High);
  CHECK_THROWS_AS(net.with_slot(2), RangeError);
  CHECK(net.find_node(7) == NodeId{1});
  CHECK(net.find_node(100) == NodeId{0});
  CHECK_FALSE(net.find_node(0).has_value());
  const auto again = parse_network(serialize_network(net), 1);
  CHECK(again.node(NodeId{0}).id == 100);
  CHECK(serialize_network(again) == serialize_network(net));
}

TEST_CASE("CSV variant") {
  const auto net = parse_network_csv(
      "from,to,length_mi,free_flow_mph,avg_mph\n0,1,1.0,40,20\n1,2,0.5,40,26\n");
  CHECK(net.node_count() == 3);
  CHECK(net.link_count() == 2);
  CHECK(net.category(LinkId{0}) == TrafficCategory::High);
  CHECK(net.category(LinkId{1}) == TrafficCategory::Medium);
  CHECK_THROWS_AS(parse_network_csv("from,to,length_mi,free_flow_mph,avg_mph\n0,1,x,40,20\n"),
                  ParseError);
}

TEST_CASE("canonical serialization round-trips bit-identically") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SyntheticSpec spec;
    spec.nodes = 30;
    spec.seed = seed;
    spec.slots = 3;
    const auto text = serialize_network(generate_synthetic(spec));
    CHECK(serialize_network(parse_network(text, 0)) == text);
  }
  const auto diamond = serialize_network(testing::diamond());
  CHECK(serialize_network(parse_network(diamond, 0)) == diamond);
}

TEST_CASE("synthetic grid with a degenerate mix") {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::Grid;
  spec.nodes = 4;
  spec.avg_degree = 2.0;
  spec.category_mix = {1.0, 0.0, 0.0};
  spec.seed = 7;
  const auto net = generate_synthetic(spec);
  CHECK(net.node_count() == 4);
  CHECK(net.link_count() == 8);
  for (std::uint32_t l = 0; l < net.link_count(); ++l) {
    CHECK(net.category(LinkId{l}) == TrafficCategory::High);
  }
  CHECK(is_strongly_connected(net));
}

TEST_CASE("synthetic generation is deterministic") {
  SyntheticSpec spec;
  spec.nodes = 100;
  spec.avg_degree = 4.0;
  spec.seed = 42;
  CHECK(serialize_network(generate_synthetic(spec)) ==
        serialize_network(generate_synthetic(spec)));
  spec.seed = 43;
  const auto other = serialize_network(generate_synthetic(spec));
  spec.seed = 42;
  CHECK(other != serialize_network(generate_synthetic(spec)));
}

TEST_CASE("synthetic networks are strongly connected and within bands") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SyntheticSpec spec;
    spec.kind = seed % 4 == 0 ? SyntheticKind::Grid : SyntheticKind::Random;
    spec.nodes = 2 + seed * 3;
    spec.avg_degree = spec.nodes == 2 ? 2.0 : 2.5;
    spec.seed = seed;
    const auto net = generate_synthetic(spec);
    CHECK(is_strongly_connected(net));
    for (const auto& link : net.links()) {
      CHECK(link.length_mi >= 0.1);
      CHECK(link.length_mi <= 2.0);
      CHECK(link.avg_mph[0] <= link.free_flow_mph);
    }
  }
}

TEST_CASE("synthetic link count follows the mean degree") {
  SyntheticSpec spec;
  spec.nodes = 50000;
  spec.avg_degree = 4.4;
  spec.seed = 1;
  const auto net = generate_synthetic(spec);
  CHECK(net.link_count() == 110000);
  CHECK(is_strongly_connected(net));

  // Observed category shares track the requested mix.
  std::array<std::size_t, kCategoryCount> count{};
  for (std::uint32_t l = 0; l < net.link_count(); ++l) {
    ++count[index_of(net.category(LinkId{l}))];
  }
  for (auto c : count) {
    CHECK(static_cast<double>(c) / 110000.0 == doctest::Approx(1.0 / 3).epsilon(0.02));
  }
}

TEST_CASE("synthetic parameter errors") {
  SyntheticSpec spec;
  spec.nodes = 1;
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
  spec.nodes = 10;
  spec.avg_degree = 1.0;
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
  spec.avg_degree = 19.0;
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
  spec.avg_degree = 4.0;
  spec.category_mix = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
}
