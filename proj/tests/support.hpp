#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "lapis/packet.hpp"

namespace lapis::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline BoundaryMatrix random_boundary(std::mt19937_64& rng, double w_lo = 0.1, double w_hi = 0.95) {
  return BoundaryMatrix::make(uniform(rng, w_lo, w_hi), uniform(rng, -1, 1), uniform(rng, -1, 1),
                              uniform(rng, -1, 1));
}

inline ExteriorDomain random_domain(std::mt19937_64& rng) {
  const double alpha = uniform(rng, 1.4, 3.0);
  return ExteriorDomain::make(alpha, alpha + uniform(rng, 0.3, 2.0));
}

// A few random steps inside the open window.
inline StepPacket random_packet(std::mt19937_64& rng, Interval window, int cells = 3) {
  const double lo = std::isinf(window.lo) ? window.hi - 2.0 : window.lo;
  const double hi = std::isinf(window.hi) ? window.lo + 2.0 : window.hi;
  std::vector<double> cuts;
  for (int i = 0; i <= cells; ++i) cuts.push_back(uniform(rng, lo, hi));
  std::sort(cuts.begin(), cuts.end());
  std::vector<cx> values;
  for (int i = 0; i < cells; ++i) values.emplace_back(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return StepPacket::from_breakpoints(cuts, values);
}

}  // namespace lapis::testing
