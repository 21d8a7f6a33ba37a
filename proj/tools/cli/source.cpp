#include "source.hpp"

#include "common.hpp"

namespace ecoroute::cli {

Network load_source(const NetworkSource& s, std::ostream& warn) {
  if (!s.net.empty() && s.gen_nodes > 0) throw UsageError("give either --net or --gen-nodes");
  if (!s.net.empty()) return read_network(s.net, s.slot, warn);
  if (s.gen_nodes == 0) throw UsageError("one of --net or --gen-nodes is required");
  if (s.slot != 0) throw UsageError("generated networks have a single slot");
  SyntheticSpec spec;
  spec.kind = SyntheticKind::Random;
  spec.nodes = s.gen_nodes;
  spec.avg_degree = s.gen_degree;
  spec.seed = s.gen_seed;
  return generate_synthetic(spec);
}

}  // namespace ecoroute::cli
