#include "lapis/rkhs.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"
#include "lapis/quadrature.hpp"

namespace lapis {

namespace {

void require_bounded(Interval j) {
  if (!(j.lo < j.hi) || !std::isfinite(j.lo) || !std::isfinite(j.hi))
    fail(ErrorCode::OrderingViolation, "kernel interval must be bounded with a < b");
}

constexpr double half_line_reach = 40.0;  // exp(-40) ~ 4e-18

Interval effective(Interval j) {
  if (std::isinf(j.lo)) return {j.hi - half_line_reach, j.hi};
  if (std::isinf(j.hi)) return {j.lo, j.lo + half_line_reach};
  return j;
}

}  // namespace

cx h1_inner(const H1Function& k, const H1Function& f, Interval j, double tol) {
  if (!(j.lo < j.hi)) fail(ErrorCode::OrderingViolation, "h1_inner needs a < b");
  const Interval r = effective(j);
  auto integrand = [&](double x) {
    return std::conj(k.value(x)) * f.value(x) + std::conj(k.derivative(x)) * f.derivative(x);
  };
  // a few fixed panels first so oscillating test functions are sampled evenly
  const int panels = 16;
  const double h = (r.hi - r.lo) / panels;
  cx sum{};
  for (int i = 0; i < panels; ++i)
    sum += integrate_adaptive<cx>(integrand, r.lo + i * h, i + 1 == panels ? r.hi : r.lo + (i + 1) * h, tol / panels)
               .value;
  return sum;
}

double kernel_endpoint(Interval j, Endpoint which, double x) {
  require_bounded(j);
  if (x < j.lo || x > j.hi) return 0.0;
  const double den = std::sinh(j.hi - j.lo);
  return which == Endpoint::Left ? std::cosh(j.hi - x) / den : std::cosh(x - j.lo) / den;
}

double kernel_interior(Interval j, double x, double y) {
  require_bounded(j);
  if (y < j.lo || y > j.hi || x < j.lo || x > j.hi) return 0.0;
  const double den = std::sinh(j.hi - j.lo);
  return (std::sinh(j.hi - x) * std::cosh(j.hi - y) + std::sinh(x - j.lo) * std::cosh(y - j.lo)) / (den * den);
}

double kernel_interior_green(Interval j, double x, double y) {
  require_bounded(j);
  if (y < j.lo || y > j.hi || x < j.lo || x > j.hi) return 0.0;
  const double lo = std::min(x, y), hi = std::max(x, y);
  return std::cosh(lo - j.lo) * std::cosh(j.hi - hi) / std::sinh(j.hi - j.lo);
}

double kernel_half_line(Interval j, double x) {
  if (std::isinf(j.lo) && std::isfinite(j.hi)) return x <= j.hi ? std::exp(x - j.hi) : 0.0;
  if (std::isinf(j.hi) && std::isfinite(j.lo)) return x >= j.lo ? std::exp(j.lo - x) : 0.0;
  fail(ErrorCode::OrderingViolation, "half-line kernel needs exactly one infinite end");
}

H1Function endpoint_kernel(Interval j, Endpoint which) {
  require_bounded(j);
  const double den = std::sinh(j.hi - j.lo);
  if (which == Endpoint::Left)
    return {[=](double x) { return cx{std::cosh(j.hi - x) / den}; },
            [=](double x) { return cx{-std::sinh(j.hi - x) / den}; }};
  return {[=](double x) { return cx{std::cosh(x - j.lo) / den}; },
          [=](double x) { return cx{std::sinh(x - j.lo) / den}; }};
}

H1Function interior_kernel(Interval j, double x) {
  require_bounded(j);
  const double den = std::sinh(j.hi - j.lo);
  const double p = std::sinh(j.hi - x) / (den * den), q = std::sinh(x - j.lo) / (den * den);
  return {[=](double y) { return cx{p * std::cosh(j.hi - y) + q * std::cosh(y - j.lo)}; },
          [=](double y) { return cx{-p * std::sinh(j.hi - y) + q * std::sinh(y - j.lo)}; }};
}

H1Function green_kernel(Interval j, double x) {
  require_bounded(j);
  const double den = std::sinh(j.hi - j.lo);
  return {[=](double y) { return cx{kernel_interior_green(j, x, y)}; },
          [=](double y) {
            return y < x ? cx{std::sinh(y - j.lo) * std::cosh(j.hi - x) / den}
                         : cx{-std::cosh(x - j.lo) * std::sinh(j.hi - y) / den};
          }};
}

H1Function half_line_kernel(Interval j) {
  if (std::isinf(j.lo) && std::isfinite(j.hi))
    return {[=](double x) { return cx{std::exp(x - j.hi)}; }, [=](double x) { return cx{std::exp(x - j.hi)}; }};
  if (std::isinf(j.hi) && std::isfinite(j.lo))
    return {[=](double x) { return cx{std::exp(j.lo - x)}; }, [=](double x) { return cx{-std::exp(j.lo - x)}; }};
  fail(ErrorCode::OrderingViolation, "half-line kernel needs exactly one infinite end");
}

std::vector<std::vector<double>> gram_matrix(const std::function<double(double, double)>& kernel,
                                             std::span<const double> points) {
  std::vector<std::vector<double>> g(points.size(), std::vector<double>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = 0; k < points.size(); ++k) g[i][k] = kernel(points[i], points[k]);
  return g;
}

double min_eigenvalue(const std::vector<std::vector<double>>& gram) {
  const auto n = static_cast<Eigen::Index>(gram.size());
  if (n == 0) return 0.0;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = 0.5 * (gram[i][k] + gram[k][i]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

double max_asymmetry(const std::vector<std::vector<double>>& gram) {
  double d = 0.0;
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t k = 0; k < gram.size(); ++k) d = std::max(d, std::abs(gram[i][k] - gram[k][i]));
  return d;
}

cx boundary_form(const BoundaryTrace& f, const BoundaryTrace& g) noexcept {
  return f.rho1[0] * std::conj(g.rho1[0]) + f.rho1[1] * std::conj(g.rho1[1]) - f.rho2[0] * std::conj(g.rho2[0]) -
         f.rho2[1] * std::conj(g.rho2[1]);
}

double domain_membership_residual(const BoundaryMatrix& b, const BoundaryTrace& f) noexcept {
  return boundary_residual(b, f);
}

PiecewiseH1 eigenfunction_pieces(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda) {
  const auto k = eigen_coeffs(b, d, lambda);
  const cx slope{0.0, two_pi * lambda};
  auto piece = [=](cx coef) {
    return H1Function{[=](double x) { return coef * phasor(lambda * x); },
                      [=](double x) { return coef * slope * phasor(lambda * x); }};
  };
  return {piece(k.a), piece(1.0), piece(k.c)};
}

BoundaryTrace kernel_traces(const ExteriorDomain& d, const PiecewiseH1& f, double tol) {
  const Interval im = d.component(Component::Minus);
  const Interval i0 = d.component(Component::Zero);
  const Interval ip = d.component(Component::Plus);
  const cx at0 = h1_inner(half_line_kernel(im), f.minus, im, tol);
  const cx at1 = h1_inner(endpoint_kernel(i0, Endpoint::Left), f.zero, i0, tol);
  const cx at_alpha = h1_inner(endpoint_kernel(i0, Endpoint::Right), f.zero, i0, tol);
  const cx at_beta = h1_inner(half_line_kernel(ip), f.plus, ip, tol);
  return {{at1, at_beta}, {at0, at_alpha}};
}

double kernel_membership_residual(const BoundaryMatrix& b, const ExteriorDomain& d, const PiecewiseH1& f,
                                  double tol) {
  return boundary_residual(b, kernel_traces(d, f, tol));
}

}  // namespace lapis
