#include <doctest.h>

#include <random>

#include "lapis/error.hpp"
#include "lapis/multiplier.hpp"
#include "support.hpp"

using namespace lapis;

namespace {

const auto ex_b = BoundaryMatrix::make(std::sqrt(3.0) / 2, 0, 0, 0);
const auto ex_d = ExteriorDomain::make(2.0, 3.0);

constexpr std::array kinds{MultiplierKind::AInv,      MultiplierKind::CInv,     MultiplierKind::AInvC,
                          MultiplierKind::CInvA,     MultiplierKind::AConjInv, MultiplierKind::CConjInv,
                          MultiplierKind::MSquaredInv, MultiplierKind::A,      MultiplierKind::C};

}  // namespace

TEST_CASE("inverse of a for the half reflector") {
  const auto m = make_multiplier(MultiplierKind::AInv, ex_b, ex_d);
  CHECK(std::abs(m.scalar - std::sqrt(3.0) / 2) < 1e-15);
  CHECK(m.base_shift == -1.0);
  for (int n = 0; n < 10; ++n) CHECK(std::abs(m.coefficient(n) - std::pow(0.5, n)) < 1e-15);
  CHECK(m.truncation_error <= 1e-12);

  const auto out = apply_multiplier(m, StepPacket::box(-0.5, 0.0));
  CHECK(std::abs(out(0.75) - std::sqrt(3.0) / 2) < 1e-15);
  CHECK(std::abs(out(-0.25) - std::sqrt(3.0) / 4) < 1e-15);
}

TEST_CASE("identity and trivial series") {
  const auto id = make_multiplier(MultiplierKind::Identity, ex_b, ex_d);
  std::mt19937_64 rng(1);
  const auto f = testing::random_packet(rng, {-2, 2});
  CHECK(distance(apply_multiplier(id, f), f) == 0.0);
  const auto flat = make_multiplier(MultiplierKind::MSquaredInv, BoundaryMatrix::make(1, 0.1, 0.2, 0.3), ex_d);
  CHECK(flat.term_count() == 1);
  CHECK(std::abs(flat.coefficient(0) - 1.0) < 1e-15);
  CHECK_THROWS_AS(make_multiplier(MultiplierKind::AInv, BoundaryMatrix::make(0, 0, 0, 0), ex_d), Error);
}

TEST_CASE("series values match the closed-form multipliers") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    const auto b = testing::random_boundary(rng, 0.3, 0.95);
    const auto d = testing::random_domain(rng);
    for (auto kind : kinds) {
      const auto m = make_multiplier(kind, b, d, 1e-14);
      for (int j = 0; j < 5; ++j) {
        const double lam = testing::uniform(rng, -6, 6);
        const cx exact = multiplier_exact_value(kind, b, d, lam);
        CHECK(std::abs(m.value(lam) - exact) <= 1e-11 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("conjugation") {
  std::mt19937_64 rng(2);
  const auto b = BoundaryMatrix::make(0.7, 0.1, 0.3, -0.2);
  const auto m = make_multiplier(MultiplierKind::AInv, b, ex_d);
  const auto mc = conjugate_multiplier(m);
  for (int i = 0; i < 100; ++i) {
    const double lam = testing::uniform(rng, -5, 5);
    CHECK(std::abs(mc.value(lam) - std::conj(m.value(lam))) < 1e-13);
  }
  const auto back = conjugate_multiplier(mc);
  for (double lam : {-1.3, 0.0, 2.2}) CHECK(std::abs(back.value(lam) - m.value(lam)) < 1e-15);
  CHECK(conjugate_kind(MultiplierKind::Identity) == MultiplierKind::Identity);
}

TEST_CASE("series action agrees with Fourier-side multiplication") {
  // (M f^)(lambda) sampled against the transform of the applied packet.
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    const auto b = testing::random_boundary(rng, 0.4, 0.9);
    const auto d = testing::random_domain(rng);
    const auto f = testing::random_packet(rng, {-2, 0});
    for (auto kind : {MultiplierKind::AInv, MultiplierKind::AInvC, MultiplierKind::MSquaredInv}) {
      const auto m = make_multiplier(kind, b, d, 1e-14);
      const auto g = apply_multiplier(m, f);
      for (double lam : {-1.1, 0.2, 0.9}) {
        // the transform of f(x + s) is e(s lambda) f^(lambda)
        CHECK(std::abs(g.fourier(lam) - m.value(lam) * f.fourier(lam)) < 1e-10);
      }
    }
  }
}

TEST_CASE("composition reproduces products of symbols") {
  const auto b = BoundaryMatrix::make(0.8, 0.2, 0.1, 0.4);
  const auto a = make_multiplier(MultiplierKind::A, b, ex_d);
  const auto ainv = make_multiplier(MultiplierKind::AInv, b, ex_d, 1e-15);
  const auto prod = compose(a, ainv);
  for (double lam : {-0.7, 0.0, 1.3}) CHECK(std::abs(prod.value(lam) - 1.0) < 1e-12);
}

TEST_CASE("windowed application equals the clipped full application") {
  std::mt19937_64 rng(4);
  const auto b = BoundaryMatrix::make(0.5, 0.3, 0.2, 0.1);
  const auto d = ExteriorDomain::make(1.7, 2.9);
  const auto m = make_multiplier(MultiplierKind::MSquaredInv, b, d);
  const auto f = testing::random_packet(rng, {1, 1.7});
  const Interval window{1.2, 4.0};
  CHECK(distance(apply_multiplier(m, f, window), restrict_to(apply_multiplier(m, f), window)) < 1e-14);
  for (double x : {1.3, 2.5, 3.9}) CHECK(std::abs(apply_pointwise(m, f, x) - apply_multiplier(m, f)(x)) < 1e-13);
}

TEST_CASE("geometric truncation counts") {
  CHECK(geometric_count(0.5, 1e-12) >= 40);
  const double r = 0.9, eps = 1e-10;
  const auto n = geometric_count(r, eps);
  CHECK(std::pow(r, static_cast<double>(n)) / (1 - r) <= eps * (1 + 1e-9));
}
