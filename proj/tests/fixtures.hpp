#pragma once

#include <algorithm>
#include <cmath>

#include "ecoroute/network.hpp"
#include "ecoroute/oracle.hpp"
#include "ecoroute/routing.hpp"

namespace ecoroute::testing {

// 0 -> 1 -> 3 (top): two 1-mile links at free flow, Low traffic, slow.
// 0 -> 2 -> 3 (bottom): two 1-mile links at half free flow, High traffic,
// faster but dearer.
inline Network diamond() {
  NetworkBuilder b;
  b.add_nodes(4);
  b.add_link(0, 1, 1.0, 30.0, 30.0);
  b.add_link(1, 3, 1.0, 30.0, 30.0);
  b.add_link(0, 2, 1.0, 70.0, 35.0);
  b.add_link(2, 3, 1.0, 70.0, 35.0);
  return std::move(b).build();
}

inline Network single_link(double length = 1.0, double free_flow = 40.0,
                           double avg = 40.0) {
  NetworkBuilder b;
  b.add_nodes(2);
  b.add_link(0, 1, length, free_flow, avg);
  return std::move(b).build();
}

// Complete digraph on 4 nodes, all Low links.
inline Network complete4() {
  NetworkBuilder b;
  b.add_nodes(4);
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = 0; j < 4; ++j) {
      if (i != j) b.add_link(i, j, 1.0 + 0.1 * (i + j), 40.0, 36.0);
    }
  }
  return std::move(b).build();
}

inline Network random_small(std::uint64_t seed, std::size_t max_nodes = 12) {
  return oracle::random_instance(seed, max_nodes);
}

inline Query random_query(const Network& net, std::uint64_t seed, double budget) {
  return oracle::random_query(net, seed, budget);
}

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace ecoroute::testing
