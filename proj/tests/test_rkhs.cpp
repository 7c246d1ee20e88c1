#include <doctest.h>

#include <random>

#include "lapis/eigen.hpp"
#include "lapis/rkhs.hpp"
#include "support.hpp"

using namespace lapis;

namespace {

// Test functions with closed-form derivatives.
std::vector<H1Function> battery() {
  return {
      {[](double x) { return cx{std::exp(-0.4 * x)}; }, [](double x) { return cx{-0.4 * std::exp(-0.4 * x)}; }},
      {[](double x) { return cx{std::cosh(x - 0.2), std::sinh(2 * x)}; },
       [](double x) { return cx{std::sinh(x - 0.2), 2 * std::cosh(2 * x)}; }},
      {[](double x) { return phasor(0.8 * x); }, [](double x) { return cx{0.0, two_pi * 0.8} * phasor(0.8 * x); }},
  };
}

}  // namespace

TEST_CASE("endpoint kernel values") {
  const Interval j{0.0, 1.0};
  CHECK(kernel_endpoint(j, Endpoint::Left, 0.0) == doctest::Approx(1.0 / std::tanh(1.0)));
  CHECK(kernel_endpoint(j, Endpoint::Left, 1.5) == 0.0);
  CHECK(kernel_endpoint(j, Endpoint::Right, -0.1) == 0.0);
  const Interval k{0.4, 2.1};
  for (double x : {0.5, 1.0, 1.9})
    CHECK(kernel_endpoint(k, Endpoint::Left, x) == doctest::Approx(kernel_endpoint(k, Endpoint::Right, k.lo + k.hi - x)));
  // of the form A e^{a - x} + B e^{x - b}: second derivative equals the function
  const double h = 1e-4, x = 1.3;
  const double second = (kernel_endpoint(k, Endpoint::Left, x + h) - 2 * kernel_endpoint(k, Endpoint::Left, x) +
                         kernel_endpoint(k, Endpoint::Left, x - h)) / (h * h);
  CHECK(second == doctest::Approx(kernel_endpoint(k, Endpoint::Left, x)).epsilon(1e-6));
}

TEST_CASE("endpoint kernels reproduce boundary values") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 5; ++k) {
    const double a = testing::uniform(rng, -1, 1);
    const Interval j{a, a + testing::uniform(rng, 0.2, 3)};
    for (const auto& f : battery()) {
      CHECK(std::abs(h1_inner(endpoint_kernel(j, Endpoint::Left), f, j) - f.value(j.lo)) < 1e-6);
      CHECK(std::abs(h1_inner(endpoint_kernel(j, Endpoint::Right), f, j) - f.value(j.hi)) < 1e-6);
    }
  }
  const Interval left{-infinity, 0.0}, right{3.0, infinity};
  const H1Function decay_l{[](double x) { return cx{std::exp(0.5 * x), 1.0 - std::exp(x)}; },
                           [](double x) { return cx{0.5 * std::exp(0.5 * x), -std::exp(x)}; }};
  const H1Function decay_r{[](double x) { return cx{std::exp(3.0 - x)} * phasor(0.3 * x); },
                           [](double x) { return cx{-1.0, two_pi * 0.3} * std::exp(3.0 - x) * phasor(0.3 * x); }};
  CHECK(std::abs(h1_inner(half_line_kernel(left), decay_l, left) - decay_l.value(0.0)) < 1e-6);
  CHECK(std::abs(h1_inner(half_line_kernel(right), decay_r, right) - decay_r.value(3.0)) < 1e-6);
}

TEST_CASE("interior kernels") {
  const Interval j{0.0, 1.0};
  const double s1 = std::sinh(1.0);
  CHECK(kernel_interior(j, 0.5, 0.5) == doctest::Approx(2 * std::sinh(0.5) * std::cosh(0.5) / (s1 * s1)));
  CHECK(kernel_interior(j, 0.5, 0.5) > 0.0);
  const std::vector<double> pts{0.25, 0.5, 0.75};
  const auto g = gram_matrix([&](double x, double y) { return kernel_interior(j, x, y); }, pts);
  CHECK(max_asymmetry(g) <= 1e-15);
  CHECK(min_eigenvalue(g) >= -1e-12);

  // the printed kernel reproduces solutions of f'' = f; the Green kernel reproduces everything
  const Interval k{0.3, 2.0};
  const H1Function hyp{[&](double y) { return cx{std::cosh(y - k.lo)}; }, [&](double y) { return cx{std::sinh(y - k.lo)}; }};
  for (double x : {0.5, 1.1, 1.8}) {
    CHECK(std::abs(h1_inner(interior_kernel(k, x), hyp, k) - hyp.value(x)) < 1e-6);
    for (const auto& f : battery()) CHECK(std::abs(h1_inner(green_kernel(k, x), f, k) - f.value(x)) < 1e-6);
  }
  std::vector<double> many;
  for (int i = 1; i < 20; ++i) many.push_back(k.lo + k.length() * i / 20.0);
  CHECK(min_eigenvalue(gram_matrix([&](double x, double y) { return kernel_interior_green(k, x, y); }, many)) > 0.0);
}

TEST_CASE("boundary form and domain membership") {
  const auto d = ExteriorDomain::make(2.0, 3.0);
  const auto ex = BoundaryMatrix::make(std::sqrt(3.0) / 2, 0, 0, 0);
  const BoundaryTrace zero{{0.0, 0.0}, {0.0, 0.0}};
  const auto psi = eigenfunction_trace(ex, d, 0.3);
  CHECK(boundary_form(zero, psi) == cx{});
  CHECK(domain_membership_residual(ex, zero) == 0.0);
  CHECK(std::abs(boundary_form(psi, psi)) < 1e-14);
  CHECK(std::abs(boundary_form(psi, eigenfunction_trace(ex, d, 1.7))) < 1e-12);
  CHECK(domain_membership_residual(ex, psi) <= 1e-12);
  const auto id = BoundaryMatrix::make(1, 0, 0, 0);
  CHECK(domain_membership_residual(ex, eigenfunction_trace(id, d, 0.3)) > 1e-3);
  // the form equals <rho1 f, rho1 g> - <rho2 f, rho2 g> term by term
  const BoundaryTrace f{{cx{1, 2}, cx{0, 1}}, {cx{3, 0}, cx{-1, 1}}};
  const BoundaryTrace g{{cx{0, 1}, cx{2, 0}}, {cx{1, 1}, cx{0, -2}}};
  const cx expect = f.rho1[0] * std::conj(g.rho1[0]) - f.rho2[0] * std::conj(g.rho2[0]) +
                    f.rho1[1] * std::conj(g.rho1[1]) - f.rho2[1] * std::conj(g.rho2[1]);
  CHECK(std::abs(boundary_form(f, g) - expect) < 1e-15);
}

TEST_CASE("kernel pairing and trace membership vanish together") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 6; ++k) {
    const auto b = testing::random_boundary(rng);
    const auto d = testing::random_domain(rng);
    const double lam = testing::uniform(rng, -3, 3);
    const auto pieces = eigenfunction_pieces(b, d, lam);
    CHECK(kernel_membership_residual(b, d, pieces) <= 1e-9);
    CHECK(domain_membership_residual(b, eigenfunction_trace(b, d, lam)) <= 1e-12);
    // against another matrix both formulations report the same nonzero residual
    const auto other = testing::random_boundary(rng);
    const double direct = domain_membership_residual(other, eigenfunction_trace(b, d, lam));
    CHECK(kernel_membership_residual(other, d, pieces) == doctest::Approx(direct).epsilon(1e-8));
  }
}
