#include <doctest.h>

#include <random>

#include "lapis/degenerate.hpp"
#include "lapis/error.hpp"
#include "support.hpp"

using namespace lapis;

TEST_CASE("model construction") {
  CHECK_THROWS_AS(DegenerateModel::two_points(0.0, 1.0), Error);
  CHECK_THROWS_AS(DegenerateModel::two_points(1.2, 1.0), Error);
  CHECK_THROWS_AS(DegenerateModel::one_interval(0.0, -1.0), Error);
  CHECK_NOTHROW(DegenerateModel::two_points(1.0, 1.0));
}

TEST_CASE("V for the simple models") {
  std::mt19937_64 rng(1);
  const auto f = testing::random_packet(rng, {-2, 2});
  CHECK(distance(degenerate_V(DegenerateModel::one_point(0.0), f), f) == 0.0);
  CHECK(distance(degenerate_V(DegenerateModel::two_points(1.0, 1.3), f), f) < 1e-15);
  // a box just right of the deleted interval's left end moves to the right of alpha
  const auto m = DegenerateModel::one_interval(0.25, 2.0);
  const auto v = degenerate_V(m, StepPacket::box(0.0, 1.0));
  CHECK(distance(v, StepPacket::box(2.0, 3.0)) < 1e-15);
  const auto vm = degenerate_V(m, StepPacket::box(-1.0, 0.0));
  CHECK(distance(vm, phasor(0.25) * StepPacket::box(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("conjugations of the one-point and one-interval models are translations") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const double theta = testing::uniform(rng, -1, 1), alpha = testing::uniform(rng, 0.2, 3);
    const auto f = testing::random_packet(rng, {-3, 3}, 4);
    const double t = testing::uniform(rng, -5, 5);
    for (const auto& m : {DegenerateModel::one_point(theta), DegenerateModel::one_interval(theta, alpha)}) {
      CHECK(degenerate_conjugation_check(m, f, t) <= 1e-13);
      CHECK(distance(degenerate_Vstar(m, degenerate_V(m, f)), f) <= 1e-13);
      const auto g = degenerate_V(m, f);
      CHECK(std::abs(norm2(degenerate_evolve(m, g, t)) - norm2(g)) <= 1e-13);
    }
  }
  CHECK(degenerate_conjugation_check(DegenerateModel::one_point(0.4), StepPacket::box(-1, 1), 1.3) <= 1e-13);
  CHECK(degenerate_conjugation_check(DegenerateModel::one_interval(0.0, 2.0), StepPacket::box(-1, 1), 0.7) <= 1e-13);
  CHECK_THROWS_AS(degenerate_evolve(DegenerateModel::two_points(0.5, 1.0), StepPacket::box(0, 1), 1.0), Error);
}

TEST_CASE("two-point multiplier") {
  const double w = std::sqrt(3.0) / 2;
  CHECK(std::abs(two_point_a(w, 1.0, 0.0)) == doctest::Approx(1.0 / std::sqrt(3.0)));
  std::vector<double> xi;
  for (int i = 0; i <= 20000; ++i) xi.push_back(-10 + 0.001 * i);
  for (double ww : {0.1, 0.5, 0.9, 1.0}) {
    for (double alpha : {0.7, 1.0, 2.3}) {
      const auto r = degenerate_multiplier_bounds(ww, alpha, xi);
      CHECK(r.within());
      CHECK(r.closed_form_gap <= 1e-10 / (ww * ww));
      CHECK(two_point_weight_residual(ww, alpha, std::span(xi).subspan(0, 400)) <= 1e-10 / (ww * ww));
    }
  }
  const auto flat = degenerate_multiplier_bounds(1.0, 1.3, xi);
  CHECK(flat.min_abs == doctest::Approx(1.0));
  CHECK(flat.max_abs == doctest::Approx(1.0));
}

TEST_CASE("two-point V*V is the |a|^2 weighting, not the identity") {
  std::mt19937_64 rng(3);
  const auto m = DegenerateModel::two_points(0.6, 1.3);
  const auto f = testing::random_packet(rng, {-3, 4}, 5);
  const auto vv = degenerate_Vstar(m, degenerate_V(m, f));
  CHECK(distance(vv, two_point_weight_operator(0.6, 1.3, f)) <= 1e-12);
  CHECK(distance(vv, f) > 1e-3);
  // Fourier side of the weighting on a packet living left of 0 (shifts stay inside chi_-)
  const auto g = StepPacket::box(-9.0, -6.0);
  const auto wg = two_point_weight_operator(0.6, 1.3, g);
  for (double x : {-0.8, 0.0, 0.45, 2.0})
    CHECK(std::abs(wg.fourier(x) - two_point_a_abs2(0.6, 1.3, x) * g.fourier(x)) < 1e-13);
}

TEST_CASE("two-point modulus matches the two-interval coefficient") {
  std::vector<double> xi;
  for (int i = 0; i <= 2000; ++i) xi.push_back(-5 + 0.005 * i);
  for (double gap : {0.1, 1.0, 3.0}) CHECK(compare_with_main_model(0.6, 1.3, gap, xi) <= 1e-10);
}
