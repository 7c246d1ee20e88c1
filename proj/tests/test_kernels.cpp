#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lapis/kernels.hpp"

using namespace lapis;

TEST_CASE("serial and parallel maps are bitwise identical") {
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back(-5 + 0.01 * i);
  auto f = [](double x) { return std::sin(x) * std::exp(-x * x); };
  CHECK(kernels::serial::map_grid<double>(grid, f) == kernels::parallel::map_grid<double>(grid, f));
  auto g = [](std::size_t i) { return std::sqrt(static_cast<double>(i)); };
  CHECK(kernels::serial::map_index<double>(257, g) == kernels::parallel::map_index<double>(257, g));
}

TEST_CASE("panel integration is reproducible across execution modes") {
  auto f = [](double x) { return std::cos(7 * x) * std::exp(-x * x); };
  const auto s = kernels::integrate_panels<double>(f, -20, 20, 64, 1e-12, kernels::Exec::Serial);
  const auto p = kernels::integrate_panels<double>(f, -20, 20, 64, 1e-12, kernels::Exec::Parallel);
  CHECK(s.value == p.value);
  CHECK(s.converged);
  // the tails beyond |x| = 20 are below 1e-170
  CHECK(std::abs(s.value - std::sqrt(std::numbers::pi) * std::exp(-49.0 / 4)) < 1e-12);
}
