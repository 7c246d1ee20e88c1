#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace lapis {

using cx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Fractional part in [0, 1).
inline double wrap_cycles(double x) noexcept {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// exp(i 2 pi x). The argument is reduced to [-1/2, 1/2] first so large
// arguments (breakpoint times frequency) keep full relative accuracy.
inline cx phasor(double cycles) noexcept {
  const double r = cycles - std::nearbyint(cycles);
  return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

// sin(pi x) / (pi x) with the removable singularity filled in.
inline double sinc_pi(double x) noexcept {
  if (std::abs(x) < 1e-8) {
    const double px = std::numbers::pi * x;
    return 1.0 - px * px / 6.0;
  }
  // sin(pi x) evaluated through the reduced argument to keep zeros exact at integers
  const double r = x - 2.0 * std::nearbyint(0.5 * x);
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  return std::sin(std::numbers::pi * r) / (std::numbers::pi * x);
}

}  // namespace lapis
