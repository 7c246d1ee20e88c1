#include <doctest.h>

#include <random>

#include "lapis/error.hpp"
#include "lapis/packet.hpp"
#include "lapis/quadrature.hpp"
#include "support.hpp"

using namespace lapis;

TEST_CASE("basic arithmetic examples") {
  const auto box = StepPacket::box(-0.5, 0.0);
  CHECK(norm2(box) == doctest::Approx(0.5));
  const auto moved = translate(box, 2.0);
  CHECK(moved.support().lo == doctest::Approx(1.5));
  CHECK(moved.support().hi == doctest::Approx(2.0));
  CHECK(std::abs(inner(StepPacket::box(0, 1), StepPacket::box(0.5, 1.5)) - 0.5) < 1e-15);
  CHECK(std::abs(moved(1.75) - 1.0) < 1e-15);
  CHECK(moved(2.5) == cx{});
}

TEST_CASE("canonical form merges equal neighbours and drops zero cells") {
  const std::vector<double> cuts{0, 1, 2, 3};
  const std::vector<cx> vals{1.0, 1.0, 0.0};
  const auto f = StepPacket::from_breakpoints(cuts, vals);
  REQUIRE(f.cells().size() == 1);
  CHECK(f.cells()[0].lo == 0.0);
  CHECK(f.cells()[0].hi == 2.0);
  CHECK((StepPacket::box(0, 1) - StepPacket::box(0, 1)).empty());
  const auto g = StepPacket::box(0, 1) + StepPacket::box(1, 2);
  CHECK(g.cells().size() == 1);
  const std::vector<double> bad{0, 2, 1};
  const std::vector<cx> two{1.0, 2.0};
  CHECK_THROWS_AS(StepPacket::from_breakpoints(bad, two), Error);
}

TEST_CASE("Fourier transform of a box is a sinc") {
  const auto box = StepPacket::box(-0.5, 0.5);
  for (double lam : {0.0, 0.3, 1.0, 2.5}) CHECK(std::abs(box.fourier(lam) - sinc_pi(lam)) < 1e-15);
}

TEST_CASE("algebra properties on random packets") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const auto f = testing::random_packet(rng, {-3, 3}, 4);
    const auto g = testing::random_packet(rng, {-1, 5}, 3);
    const double t = testing::uniform(rng, -4, 4);
    const cx z{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)};
    CHECK(std::abs(norm2(translate(f, t)) - norm2(f)) <= 1e-13 * norm2(f));
    CHECK(std::abs(inner(translate(f, t), translate(g, t)) - inner(f, g)) <= 1e-12);
    CHECK(std::abs(norm2(scale(z, f)) - std::norm(z) * norm2(f)) <= 1e-12);
    CHECK(distance(translate(translate(f, t), -t), f) <= 1e-12);
    CHECK(approx_equal(f + g, g + f));
    CHECK(std::abs(norm2(f) - std::real(inner(f, f))) <= 1e-13);
    // the pieces of a split recombine
    const auto left = restrict_to(f, {-infinity, t / 2}), right = restrict_to(f, {t / 2, infinity});
    CHECK(distance(left + right, f) <= 1e-13);
    if (k >= 20) continue;
    // Parseval against the sampled Fourier transform, checked by quadrature
    auto integrand = [&](double lam) { return std::norm(f.fourier(lam)); };
    const double energy = integrate_adaptive<double>(integrand, -400, 400, 1e-8).value;
    CHECK(energy == doctest::Approx(norm2(f)).epsilon(5e-3));
  }
}

TEST_CASE("oscillating cells integrate exactly") {
  const auto w = StepPacket::wave(1.0, 2.0, {0.5, 0.5}, 3.0);
  CHECK(norm2(w) == doctest::Approx(0.5));
  CHECK(std::abs(integral_of_phase(0.0, 1.0, 2.5) - 1.5) < 1e-15);
  CHECK(std::abs(integral_of_phase(1.0, 0.0, 1.0)) < 1e-15);
  auto f = [](double x) { return phasor(0.37 * x); };
  CHECK(std::abs(integral_of_phase(0.37, -0.2, 1.9) - integrate_adaptive<cx>(f, -0.2, 1.9, 1e-14).value) < 1e-13);
}

TEST_CASE("barrier mass and support queries") {
  const auto d = ExteriorDomain::make(2.0, 3.0);
  CHECK(barrier_mass(StepPacket::box(-1, 0) + StepPacket::box(3, 4), d) == 0.0);
  CHECK(barrier_mass(StepPacket::box(0.5, 1.5), d) == doctest::Approx(0.5));
  CHECK(supported_in(StepPacket::box(1.2, 1.8), d.component(Component::Zero)));
  CHECK(mass_in(StepPacket::box(0, 4, 2.0), {1, 2}) == doctest::Approx(4.0));
}
