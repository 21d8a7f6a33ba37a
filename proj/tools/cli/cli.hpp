#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecoroute::cli {

// Exit codes of the ecoroute executable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verify found a violation
inline constexpr int kExitNoRoute = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

// Runs one command line (args[0] is the program name) and returns the exit
// code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecoroute::cli
