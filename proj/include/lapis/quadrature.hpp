#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "lapis/phase.hpp"

namespace lapis {

template <class T>
struct Quadrature {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {
// Kronrod 15-point abscissae/weights with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> gk_x{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk_wk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk_wg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T kron = fc * gk_wk[7];
  T gauss = fc * gk_wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * gk_x[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * gk_wk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * gk_wg[j / 2];
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}
}  // namespace detail

// Globally adaptive Gauss-Kronrod (G7/K15): bisect the panel with the largest
// error estimate until the summed estimate drops below abs_tol.
template <class T, class F>
Quadrature<T> integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                 std::size_t max_panels = 200000) {
  Quadrature<T> out;
  if (a == b) return out;
  std::priority_queue<detail::Panel<T>> heap;
  auto first = detail::gk15<T>(f, a, b);
  out.evaluations = 15;
  T total = first.value;
  double err = first.error;
  heap.push(first);
  while (err > abs_tol && heap.size() < max_panels) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // cannot split further
    heap.pop();
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the panels to shed the drift of the running update.
  T sum{};
  double esum = 0.0;
  std::vector<detail::Panel<T>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : panels) {
    sum += p.value;
    esum += p.error;
  }
  out.value = sum;
  out.error = esum;
  out.converged = esum <= abs_tol;
  return out;
}

// Recursive adaptive Simpson with the Lyness correction term.
template <class T, class F>
Quadrature<T> adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 50) {
  Quadrature<T> out;
  const T fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b);
  const T fm = f(m);
  out.evaluations = 3;
  if (a == b) return out;
  auto simpson = [](double lo, double hi, T flo, T fmid, T fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  auto recurse = [&](auto&& self, double lo, T flo, double hi, T fhi, double mid, T fmid, T whole,
                     double tol, int depth) -> T {
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const T flm = f(lm), frm = f(rm);
    out.evaluations += 2;
    const T left = simpson(lo, mid, flo, flm, fmid);
    const T right = simpson(mid, hi, fmid, frm, fhi);
    const T delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
      if (std::abs(delta) > 15.0 * tol) out.converged = false;
      out.error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return self(self, lo, flo, mid, fmid, lm, flm, left, 0.5 * tol, depth + 1) +
           self(self, mid, fmid, hi, fhi, rm, frm, right, 0.5 * tol, depth + 1);
  };
  out.value = recurse(recurse, a, fa, b, fb, m, fm, simpson(a, b, fa, fm, fb), abs_tol, 0);
  return out;
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Integrand tail term coef * e(freq*lambda) / ((lambda - pole)(lambda - second_pole)),
// or a single-pole term when second_pole is empty.
struct PoleTerm {
  cx coef;
  double freq;
  double pole;
  std::optional<double> second_pole;
};

// Frequencies below this are treated as exactly zero; they only arise from
// rounding in sums of breakpoints and lattice shifts.
inline constexpr double zero_frequency = 1e-11;

// Exact value of the integral of a term over |lambda| > cutoff (symmetric
// truncation). Requires cutoff > |pole| + 1.
cx tail_integral(const PoleTerm& term, double cutoff);
cx tail_integral(std::span<const PoleTerm> terms, double cutoff);

}  // namespace lapis
