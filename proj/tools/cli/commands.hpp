#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ecoroute::cli {

struct GenOptions {
  std::string kind = "random";
  std::size_t nodes = 0;
  double degree = 4.0;
  std::string mix = "1,1,1";  // high,medium,low weights
  std::uint64_t seed = 1;
  std::size_t slots = 1;
  std::string output;  // "-" writes to stdout
};

struct RouteOptions {
  std::string net;
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::string algo = "crptc";
  double budget_kwh = 0.0;
  double alpha = 0.0;
  std::optional<double> beta_time;
  std::optional<double> beta_energy;
  std::size_t slot = 0;
  std::string params;
  std::string geojson;
  bool timing = true;
};

// Network source shared by compare and bench: a file, or a generated
// random network.
struct NetworkSource {
  std::string net;
  std::size_t gen_nodes = 0;
  double gen_degree = 4.4;
  std::uint64_t gen_seed = 1;
  std::size_t slot = 0;
};

struct CompareOptions {
  NetworkSource source;
  std::size_t pairs = 100;
  std::uint64_t seed = 1;
  std::string budgets = "0,0.5,1,2.5,5.7";
  std::string algos = "fastest,cdf,bilevel,crptc";
  std::string format = "json";
  std::string params;
  bool timing = true;
};

struct VerifyOptions {
  std::size_t seeds = 100;
  std::uint64_t first_seed = 0;
  std::size_t max_nodes = 12;
  std::string budgets = "0,0.1,0.3,1.0";
  std::string params;
};

struct BenchOptions {
  NetworkSource source;
  std::size_t pairs = 20;
  std::uint64_t seed = 1;
  std::string algos = "fastest,cdf,bilevel";
  double budget_kwh = 0.5;
  std::string format = "table";
  std::string json_out;
  std::string params;
};

struct ExportOptions {
  std::string net;
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double budget_kwh = 0.0;
  std::size_t slot = 0;
  std::string params;
  std::string output;
  std::size_t max_links = 1'000'000;
};

int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err);
int cmd_route(const RouteOptions& o, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err);
int cmd_export_milp(const ExportOptions& o, std::ostream& out, std::ostream& err);

}  // namespace ecoroute::cli
