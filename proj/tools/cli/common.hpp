#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ecoroute/crptc.hpp"
#include "ecoroute/energy.hpp"
#include "ecoroute/network.hpp"
#include "ecoroute/routing.hpp"

namespace ecoroute::cli {

using Json = nlohmann::ordered_json;

// Bad flag values that CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algo { Fastest, Cdf, CdfExact, HybridLp, Bilevel, Crptc };

std::string_view algo_name(Algo a);
Algo parse_algo(std::string_view name);
// Comma separated, duplicates removed, order kept.
std::vector<Algo> parse_algo_list(std::string_view list);
std::vector<double> parse_number_list(std::string_view list);

// Every number printed by the CLI goes through this: 9 significant digits.
double round9(double v);

RouteSolution solve(const Network& net, const Query& q, Algo algo,
                    const EnergyParams& p);

// Network file (JSON, or CSV by extension); warnings go to `warn`.
Network read_network(const std::string& path, std::size_t slot, std::ostream& warn);
EnergyParams read_params(const std::string& path);  // empty path = defaults
NodeId resolve_node(const Network& net, std::uint32_t external_id, std::string_view flag);

Json solution_json(const Network& net, const Query& q, const RouteSolution& s,
                   bool timing);
// LineString of the route; throws UsageError without coordinates.
Json route_geojson(const Network& net, const RouteSolution& s);

// Uniform O-D pairs with origin != destination and destination reachable.
std::vector<std::pair<NodeId, NodeId>> sample_pairs(const Network& net,
                                                    std::size_t count,
                                                    std::uint64_t seed);

// Worker threads for `jobs` tasks: hardware concurrency, capped by
// ECOROUTE_THREADS when set.
std::size_t worker_count(std::size_t jobs);
// Runs body(i) for i in [0, n) on worker_count(n) threads. The first
// exception thrown by a task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

double seconds_since(std::int64_t start_ns);
std::int64_t now_ns();

}  // namespace ecoroute::cli
