#include <doctest.h>

#include <random>

#include "lapis/domain.hpp"
#include "lapis/error.hpp"
#include "support.hpp"

using namespace lapis;

TEST_CASE("components and classification") {
  const auto d = ExteriorDomain::make(2.0, 3.0);
  CHECK(std::isinf(d.component(Component::Minus).lo));
  CHECK(d.component(Component::Minus).hi == 0.0);
  CHECK(d.component(Component::Zero).lo == 1.0);
  CHECK(d.component(Component::Zero).hi == 2.0);
  CHECK(d.component(Component::Plus).lo == 3.0);
  CHECK(d.lattice_step() == 1.0);
  CHECK(d.classify(0.5) == Region::Barrier1);
  CHECK(d.classify(2.5) == Region::Barrier2);
  CHECK(d.classify(-0.1) == Region::IMinus);
  CHECK(d.classify(1.5) == Region::IZero);
  CHECK(d.classify(7.0) == Region::IPlus);
  CHECK(d.classify(1.0) == Region::Boundary);
  CHECK_FALSE(d.in_omega(3.0));
}

TEST_CASE("domain ordering is enforced") {
  CHECK_THROWS_AS(ExteriorDomain::make(3.0, 2.0), Error);
  CHECK_THROWS_AS(ExteriorDomain::make(1.0, 2.0), Error);
  CHECK_THROWS_AS(ExteriorDomain::make(2.0, 2.0), Error);
  try {
    ExteriorDomain::make(3.0, 2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderingViolation);
  }
}

TEST_CASE("normalizing two intervals") {
  const auto n = normalize_intervals({2.0, 4.0}, {5.0, 9.0});
  CHECK(n.domain.alpha() == doctest::Approx(1.5));
  CHECK(n.domain.beta() == doctest::Approx(3.5));
  CHECK(n.to_normal(4.0) == doctest::Approx(1.0));
  CHECK(n.from_normal(n.to_normal(7.3)) == doctest::Approx(7.3));
  CHECK_THROWS_AS(normalize_intervals({0, 2}, {1, 3}), Error);
}

TEST_CASE("boundary matrix special cases") {
  const auto id = BoundaryMatrix::make(1, 0, 0, 0);
  CHECK(id.regime() == Regime::Transparent);
  const Matrix2 eye{{{1.0, 0.0}, {0.0, 1.0}}};
  CHECK(max_abs_difference(id.matrix(), eye) == 0.0);

  const double theta = 0.3, psi = 0.1;
  const auto dec = BoundaryMatrix::make(0, theta, 0, psi);
  CHECK(dec.regime() == Regime::Decoupled);
  const Matrix2 anti{{{0.0, -phasor(theta - psi)}, {phasor(psi), 0.0}}};
  CHECK(max_abs_difference(dec.matrix(), anti) < 1e-15);

  const auto ex = BoundaryMatrix::make(std::sqrt(3.0) / 2, 0, 0, 0);
  const Matrix2 rot{{{std::sqrt(3.0) / 2, -0.5}, {0.5, std::sqrt(3.0) / 2}}};
  CHECK(max_abs_difference(ex.matrix(), rot) < 1e-15);
  CHECK(std::abs(ex.su2().a - std::sqrt(3.0) / 2) < 1e-15);
  CHECK(std::abs(ex.su2().b - 0.5) < 1e-15);

  const auto z = BoundaryMatrix::make(0, 0, 0, 0).su2();
  CHECK(std::abs(z.a) == 0.0);
  CHECK(std::abs(z.b - 1.0) < 1e-15);
  CHECK_THROWS_AS(BoundaryMatrix::make(1.2, 0, 0, 0), Error);
}

TEST_CASE("boundary matrices are unitary with determinant e(theta)") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const auto b = testing::random_boundary(rng, 0.0, 1.0);
    const Matrix2 m = b.matrix();
    const Matrix2 eye{{{1.0, 0.0}, {0.0, 1.0}}};
    CHECK(max_abs_difference(multiply(adjoint(m), m), eye) <= 1e-15);
    CHECK(std::abs(determinant(m) - phasor(b.theta())) <= 1e-15);
    const auto f = b.su2();
    CHECK(std::abs(std::norm(f.a) + std::norm(f.b) - 1.0) <= 1e-15);
    const auto back = BoundaryMatrix::from_su2(f);
    CHECK(max_abs_difference(back.matrix(), m) <= 1e-14);
  }
}

TEST_CASE("boundary residual is zero exactly on B-compatible traces") {
  const auto b = BoundaryMatrix::make(0.7, 0.2, -0.4, 0.9);
  const Vector2 rho1{cx{0.3, -1.0}, cx{2.0, 0.5}};
  BoundaryTrace t{rho1, matvec(b.matrix(), rho1)};
  CHECK(boundary_residual(b, t) <= 1e-15);
  t.rho2[1] += 1e-3;
  CHECK(boundary_residual(b, t) == doctest::Approx(1e-3));
}
