#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"
#include "support.hpp"

using namespace lapis;

namespace {

// Independent oracle: solve the continuity system for (a, c) from the matrix
// entries directly, with psi normalized to 1 on I0.
std::pair<cx, cx> oracle_coeffs(const BoundaryMatrix& b, const ExteriorDomain& d, double lam) {
  const Matrix2 m = b.matrix();
  // B (f(1), f(beta)) = (f(0), f(alpha)) with f = a e(lam x) on I-, e(lam x) on I0, c e(lam x) on I+
  Eigen::Matrix2cd A;
  Eigen::Vector2cd rhs;
  A << -1.0, m[0][1] * phasor(lam * d.beta()), 0.0, m[1][1] * phasor(lam * d.beta());
  rhs << -m[0][0] * phasor(lam), phasor(lam * d.alpha()) - m[1][0] * phasor(lam);
  const Eigen::Vector2cd x = A.partialPivLu().solve(rhs);
  return {x(0), x(1)};
}

}  // namespace

TEST_CASE("closed-form coefficients match an independent linear solve") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 2000; ++k) {
    const auto b = testing::random_boundary(rng);
    const auto d = testing::random_domain(rng);
    const double lam = testing::uniform(rng, -20, 20);
    const auto e = eigen_coeffs(b, d, lam);
    const auto [a, c] = oracle_coeffs(b, d, lam);
    CHECK(std::abs(e.a - a) <= 1e-12 * std::max(1.0, std::abs(a)));
    CHECK(std::abs(e.c - c) <= 1e-12 * std::max(1.0, std::abs(c)));
    CHECK(boundary_system_residual(b, d, lam, e.a, e.c) <= 1e-12);
    CHECK(std::abs(std::abs(e.a) - std::abs(e.c)) <= 1e-12);
    CHECK(e.m >= b.w() / 2 - 1e-15);
    CHECK(e.m <= 2 / b.w() + 1e-15);
  }
}

TEST_CASE("transfer function examples") {
  const auto d = ExteriorDomain::make(2.0, 3.0);
  const auto one = BoundaryMatrix::make(1, 0.3, 0.1, 0.2);
  CHECK(std::abs(transfer_H(one, d, 0.77) - 1.0) < 1e-15);
  const auto ex = BoundaryMatrix::make(std::sqrt(3.0) / 2, 0, 0, 0);
  CHECK(std::abs(transfer_H(ex, d, 0.0) - 2.0) < 1e-14);
  for (double lam = -3; lam < 3; lam += 0.137)
    CHECK(std::abs(transfer_H(ex, d, lam + 1.0) - transfer_H(ex, d, lam)) < 1e-13);
  CHECK(std::abs(eigen_coeffs(ex, d, 0.0).a - 1.0 / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("transparent boundary gives unimodular coefficients") {
  const auto d = ExteriorDomain::make(2.2, 3.7);
  const double theta = 0.3, phi = -0.15;
  const auto b = BoundaryMatrix::make(1, theta, phi, 0.4);
  for (double lam : {-2.1, 0.0, 0.37, 5.5}) {
    const auto e = eigen_coeffs(b, d, lam);
    CHECK(std::abs(e.a - phasor(phi + lam)) < 1e-14);
    CHECK(std::abs(e.c - phasor(phi - theta - (d.beta() - d.alpha()) * lam)) < 1e-14);
    CHECK(std::abs(scattering_matrix(b, d, lam) - phasor(-theta - (d.beta() - d.alpha() + 1) * lam)) < 1e-14);
  }
}

TEST_CASE("eigenfunctions satisfy the boundary condition") {
  const auto d = ExteriorDomain::make(2.0, 3.0);
  const auto ex = BoundaryMatrix::make(std::sqrt(3.0) / 2, 0, 0, 0);
  CHECK(boundary_residual(ex, eigenfunction_trace(ex, d, 0.37)) <= 1e-12);
  CHECK(std::abs(std::abs(eigenfunction_eval(ex, d, 0.37, 1.5)) - 1.0) < 1e-15);
  // a different matrix fails it
  const auto id = BoundaryMatrix::make(1, 0, 0, 0);
  CHECK(boundary_residual(ex, eigenfunction_trace(id, d, 0.3)) > 1e-3);
}

TEST_CASE("scattering matrix is unimodular and its routes agree") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const auto b = testing::random_boundary(rng);
    const auto d = testing::random_domain(rng);
    const double lam = testing::uniform(rng, -10, 10);
    const auto r = scattering_matrix_routes(b, d, lam);
    CHECK(std::abs(std::abs(r.ratio) - 1.0) <= 1e-12);
    CHECK(r.max_pairwise_gap() <= 1e-12);
  }
  const auto d = ExteriorDomain::make(2.0, 3.0);
  CHECK(std::abs(scattering_matrix(BoundaryMatrix::make(std::sqrt(3.0) / 2, 0, 0, 0), d, 0.0) - 1.0) < 1e-14);
}

TEST_CASE("bound states only in the decoupled regime") {
  const auto d = ExteriorDomain::make(2.0, 3.0);
  const auto zero = BoundaryMatrix::make(0, 0, 0, 0);
  const auto levels = bound_state_spectrum(zero, d, -2, 2).levels;
  REQUIRE(levels.size() == 5);
  for (int n = -2; n <= 2; ++n) CHECK(levels[static_cast<std::size_t>(n + 2)] == doctest::Approx(n));
  const auto half = bound_state_spectrum(BoundaryMatrix::make(0, 0, 0, 0.5), d, 0, 1).levels;
  CHECK(half[0] == doctest::Approx(0.5));
  CHECK(half[1] == doctest::Approx(1.5));
  CHECK(bound_state_spectrum(BoundaryMatrix::make(0.5, 0, 0, 0), d, -2, 2).levels.empty());
  for (double lam : levels) CHECK(boundary_residual(zero, bound_state_trace(zero, d, lam)) <= 1e-12);
  CHECK_THROWS_AS(eigen_coeffs(zero, d, 0.3), Error);
}
