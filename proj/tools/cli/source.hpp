#pragma once

#include <iosfwd>

#include "commands.hpp"
#include "ecoroute/network.hpp"

namespace ecoroute::cli {

// Loads --net, or generates a random network of --gen-nodes nodes.
Network load_source(const NetworkSource& s, std::ostream& warn);

}  // namespace ecoroute::cli
