#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lapis/quadrature.hpp"

using namespace lapis;

TEST_CASE("adaptive Gauss-Kronrod on smooth and kinked integrands") {
  auto smooth = [](double x) { return std::exp(-x * x); };
  const auto r = integrate_adaptive<double>(smooth, -6.0, 6.0, 1e-13);
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  auto kink = [](double x) { return std::abs(x - 0.3); };
  CHECK(integrate_adaptive<double>(kink, 0.0, 1.0, 1e-12).value == doctest::Approx(0.29).epsilon(1e-11));
}

TEST_CASE("adaptive Simpson and Gauss-Legendre agree with closed forms") {
  auto f = [](double x) { return std::cos(3 * x); };
  CHECK(adaptive_simpson<double>(f, 0.0, 2.0, 1e-12).value == doctest::Approx(std::sin(6.0) / 3).epsilon(1e-10));
  const auto g = gauss_legendre(12);
  double sum = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) sum += g.weights[i] * std::pow(g.nodes[i], 10);
  CHECK(sum == doctest::Approx(2.0 / 11).epsilon(1e-14));
}

TEST_CASE("oscillatory tail integrals match brute-force quadrature") {
  // integral over |lambda| > L of e(f lambda)/(lambda - p), brute force with a long window
  for (double freq : {0.5, 1.7, -2.3}) {
    const PoleTerm t{{0.7, -0.2}, freq, 0.4, std::nullopt};
    const double L = 12.0, far = 4000.0;
    auto integrand = [&](double x) { return t.coef * phasor(freq * x) / (x - t.pole); };
    const auto right = integrate_adaptive<cx>(integrand, L, far, 1e-12, 400000).value;
    const auto left = integrate_adaptive<cx>(integrand, -far, -L, 1e-12, 400000).value;
    // the dropped remainder beyond far is O(1/(2 pi f far))
    CHECK(std::abs(tail_integral(t, L) - (left + right)) < 2e-4);
  }
  const PoleTerm two{{1.0, 0.0}, 0.0, 0.2, 0.9};
  auto integrand = [&](double x) { return two.coef / ((x - 0.2) * (x - 0.9)); };
  const double L = 5.0;
  const cx brute = integrate_adaptive<cx>(integrand, L, 1e6, 1e-13, 400000).value +
                   integrate_adaptive<cx>(integrand, -1e6, -L, 1e-13, 400000).value;
  CHECK(std::abs(tail_integral(two, L) - brute) < 1e-5);
}
