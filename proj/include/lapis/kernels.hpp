#pragma once

// Data-parallel kernels. Every routine exists twice: a plain serial loop kept
// as the reference, and an OpenMP version. Work items are independent and
// reductions are done in index order afterwards, so both produce bitwise
// identical results.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lapis/quadrature.hpp"

namespace lapis::kernels {

enum class Exec { Serial, Parallel };

namespace serial {
template <class T, class F>
std::vector<T> map_grid(std::span<const double> grid, F&& f) {
  std::vector<T> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
  return out;
}

template <class T, class F>
std::vector<T> map_index(std::size_t n, F&& f) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  return out;
}
}  // namespace serial

namespace parallel {
template <class T, class F>
std::vector<T> map_grid(std::span<const double> grid, F&& f) {
  std::vector<T> out(grid.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(grid[i]);
  return out;
}

template <class T, class F>
std::vector<T> map_index(std::size_t n, F&& f) {
  std::vector<T> out(n);
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < m; ++i) out[i] = f(static_cast<std::size_t>(i));
  return out;
}
}  // namespace parallel

template <class T, class F>
std::vector<T> map_grid(std::span<const double> grid, F&& f, Exec exec = Exec::Parallel) {
  return exec == Exec::Serial ? serial::map_grid<T>(grid, f) : parallel::map_grid<T>(grid, f);
}

template <class T, class F>
std::vector<T> map_index(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
  return exec == Exec::Serial ? serial::map_index<T>(n, f) : parallel::map_index<T>(n, f);
}

// Split [a, b] into equal panels, integrate each adaptively to its share of
// the tolerance, then add the panel results in order.
template <class T, class F>
Quadrature<T> integrate_panels(F&& f, double a, double b, std::size_t panels, double abs_tol,
                               Exec exec = Exec::Parallel) {
  const double h = (b - a) / static_cast<double>(panels);
  const double share = abs_tol / static_cast<double>(panels);
  auto one = [&](std::size_t i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = i + 1 == panels ? b : a + h * static_cast<double>(i + 1);
    return integrate_adaptive<T>(f, lo, hi, share, 20000);
  };
  const auto parts = map_index<Quadrature<T>>(panels, one, exec);
  Quadrature<T> total;
  for (const auto& p : parts) {
    total.value += p.value;
    total.error += p.error;
    total.evaluations += p.evaluations;
    total.converged = total.converged && p.converged;
  }
  return total;
}

}  // namespace lapis::kernels
