#include "common.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "ecoroute/error.hpp"

namespace ecoroute::cli {

namespace {

constexpr std::pair<Algo, std::string_view> kAlgoNames[] = {
    {Algo::Fastest, "fastest"},   {Algo::Cdf, "cdf"},
    {Algo::CdfExact, "cdf-exact"}, {Algo::HybridLp, "hybrid-lp"},
    {Algo::Bilevel, "bilevel"},   {Algo::Crptc, "crptc"},
};

std::vector<std::string_view> split(std::string_view list) {
  std::vector<std::string_view> parts;
  while (!list.empty()) {
    const auto comma = list.find(',');
    auto part = list.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (!part.empty()) parts.push_back(part);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return parts;
}

std::vector<char> reachable_from(const Network& net, NodeId origin) {
  std::vector<char> seen(net.node_count(), 0);
  std::vector<NodeId> stack{origin};
  seen[origin.value] = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (const auto l : net.out_links(u)) {
      const auto v = net.link(l).to;
      if (!seen[v.value]) {
        seen[v.value] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::string_view algo_name(Algo a) {
  for (const auto& [algo, name] : kAlgoNames) {
    if (algo == a) return name;
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  for (const auto& [algo, n] : kAlgoNames) {
    if (n == name) return algo;
  }
  throw UsageError("unknown algorithm '" + std::string(name) +
                   "' (expected fastest, cdf, cdf-exact, hybrid-lp, bilevel or crptc)");
}

std::vector<Algo> parse_algo_list(std::string_view list) {
  std::vector<Algo> algos;
  for (const auto part : split(list)) {
    const auto a = parse_algo(part);
    if (std::find(algos.begin(), algos.end(), a) == algos.end()) algos.push_back(a);
  }
  if (algos.empty()) throw UsageError("empty algorithm list");
  return algos;
}

std::vector<double> parse_number_list(std::string_view list) {
  std::vector<double> values;
  for (const auto part : split(list)) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || end != part.data() + part.size()) {
      throw UsageError("not a number: '" + std::string(part) + "'");
    }
    values.push_back(v);
  }
  return values;
}

double round9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

RouteSolution solve(const Network& net, const Query& q, Algo algo,
                    const EnergyParams& p) {
  switch (algo) {
    case Algo::Fastest: return fastest_route(net, q, p);
    case Algo::Cdf: return cdf_dijkstra(net, q, p);
    case Algo::CdfExact: return cdf_exact(net, q, p);
    case Algo::HybridLp: return hybrid_lp_route(net, q, p);
    case Algo::Bilevel: return bilevel_route(net, q, p);
    case Algo::Crptc: return crptc_exact(net, q, p);
  }
  throw UsageError("unknown algorithm");
}

Network read_network(const std::string& path, std::size_t slot, std::ostream& warn) {
  std::vector<std::string> warnings;
  auto net = load_network(path, slot, &warnings);
  for (const auto& w : warnings) warn << "warning: " << w << '\n';
  return net;
}

EnergyParams read_params(const std::string& path) {
  if (path.empty()) return EnergyParams{};
  return load_energy_params(path);
}

NodeId resolve_node(const Network& net, std::uint32_t external_id, std::string_view flag) {
  const auto n = net.find_node(external_id);
  if (!n) {
    throw UsageError(std::string(flag) + ": no node with id " + std::to_string(external_id));
  }
  return *n;
}

Json solution_json(const Network& net, const Query& q, const RouteSolution& s,
                   bool timing) {
  Json j;
  j["algorithm"] = s.algorithm;
  j["origin"] = net.node(q.origin).id;
  j["destination"] = net.node(q.destination).id;
  j["budget_kwh"] = round9(q.budget_kwh);
  j["alpha"] = round9(q.alpha);
  auto& nodes = j["nodes"] = Json::array();
  for (const auto n : s.nodes) nodes.push_back(net.node(n).id);
  auto& links = j["links"] = Json::array();
  for (const auto l : s.links) links.push_back(net.link(l).id);
  auto& y = j["y"] = Json::array();
  for (const double v : s.y) y.push_back(round9(v));
  j["breakdown"] = {
      {"gas_dollars", round9(s.breakdown.gas_dollars)},
      {"electricity_dollars", round9(s.breakdown.electricity_dollars)},
      {"gallons_used", round9(s.breakdown.gallons_used)},
      {"kwh_used", round9(s.breakdown.kwh_used)},
      {"total_dollars", round9(s.breakdown.total_dollars)},
  };
  j["travel_time_h"] = round9(s.travel_time_h);
  j["objective"] = round9(s.objective);
  j["wall_time_s"] = timing ? round9(s.wall_time_s) : 0.0;
  return j;
}

Json route_geojson(const Network& net, const RouteSolution& s) {
  if (!net.has_coordinates()) {
    throw UsageError("--geojson needs lat/lon on every node of the network");
  }
  Json coords = Json::array();
  for (const auto n : s.nodes) {
    const auto& node = net.node(n);
    coords.push_back(Json::array({round9(*node.lon), round9(*node.lat)}));
  }
  Json feature;
  feature["type"] = "Feature";
  feature["geometry"] = {{"type", "LineString"}, {"coordinates", coords}};
  feature["properties"] = {
      {"algorithm", s.algorithm},
      {"total_dollars", round9(s.breakdown.total_dollars)},
      {"kwh_used", round9(s.breakdown.kwh_used)},
      {"travel_time_h", round9(s.travel_time_h)},
  };
  Json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = Json::array({feature});
  return doc;
}

std::vector<std::pair<NodeId, NodeId>> sample_pairs(const Network& net,
                                                    std::size_t count,
                                                    std::uint64_t seed) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (count == 0) return pairs;
  if (net.node_count() < 2) throw UsageError("need at least two nodes to sample O-D pairs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(net.node_count() - 1));
  constexpr int kAttempts = 1000;
  while (pairs.size() < count) {
    bool found = false;
    for (int a = 0; a < kAttempts && !found; ++a) {
      const NodeId o{pick(rng)};
      const NodeId d{pick(rng)};
      if (o == d) continue;
      if (reachable_from(net, o)[d.value]) {
        pairs.emplace_back(o, d);
        found = true;
      }
    }
    if (!found) throw UsageError("could not sample a reachable O-D pair");
  }
  return pairs;
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ECOROUTE_THREADS")) {
    std::size_t cap = 0;
    const std::string_view text(env);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc{} && end == text.data() + text.size() && cap > 0) {
      n = std::min(n, cap);
    }
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const auto workers = worker_count(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double seconds_since(std::int64_t start_ns) {
  return static_cast<double>(now_ns() - start_ns) * 1e-9;
}

}  // namespace ecoroute::cli
