#include "lapis/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lapis/error.hpp"

namespace lapis {

std::string_view to_string(Component c) noexcept {
  switch (c) {
    case Component::Minus: return "minus";
    case Component::Zero: return "zero";
    case Component::Plus: return "plus";
  }
  return "?";
}

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::IMinus: return "IMinus";
    case Region::Barrier1: return "Barrier1";
    case Region::IZero: return "IZero";
    case Region::Barrier2: return "Barrier2";
    case Region::IPlus: return "IPlus";
    case Region::Boundary: return "Boundary";
  }
  return "?";
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Decoupled: return "Decoupled";
    case Regime::Generic: return "Generic";
    case Regime::Transparent: return "Transparent";
  }
  return "?";
}

ExteriorDomain ExteriorDomain::make(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !(1.0 < alpha) || !(alpha < beta)) {
    std::ostringstream msg;
    msg << "need 1 < alpha < beta, got alpha=" << alpha << " beta=" << beta;
    fail(ErrorCode::OrderingViolation, msg.str());
  }
  return ExteriorDomain(alpha, beta);
}

Interval ExteriorDomain::component(Component c) const noexcept {
  switch (c) {
    case Component::Minus: return {-infinity, 0.0};
    case Component::Zero: return {1.0, alpha_};
    case Component::Plus: return {beta_, infinity};
  }
  return {0.0, 0.0};
}

Region ExteriorDomain::classify(double x) const noexcept {
  if (x == 0.0 || x == 1.0 || x == alpha_ || x == beta_) return Region::Boundary;
  if (x < 0.0) return Region::IMinus;
  if (x < 1.0) return Region::Barrier1;
  if (x < alpha_) return Region::IZero;
  if (x < beta_) return Region::Barrier2;
  return Region::IPlus;
}

bool ExteriorDomain::in_omega(double x) const noexcept {
  const Region r = classify(x);
  return r == Region::IMinus || r == Region::IZero || r == Region::IPlus;
}

AffineNormalization normalize_intervals(Interval first, Interval second) {
  if (!(first.lo < first.hi) || !(second.lo < second.hi) || !(first.hi < second.lo)) {
    fail(ErrorCode::OrderingViolation, "need two disjoint intervals [p,q] < [r,u] with p<q, r<u");
  }
  const double scale = 1.0 / first.length();
  const double origin = first.lo;
  const double alpha = (second.lo - origin) * scale;
  const double beta = (second.hi - origin) * scale;
  return AffineNormalization{ExteriorDomain::make(alpha, beta), scale, origin};
}

Matrix2 adjoint(const Matrix2& m) noexcept {
  return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) noexcept {
  Matrix2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Vector2 matvec(const Matrix2& m, const Vector2& v) noexcept {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

cx determinant(const Matrix2& m) noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

double max_abs_difference(const Matrix2& a, const Matrix2& b) noexcept {
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

BoundaryMatrix::BoundaryMatrix(double w, double theta, double phi, double psi)
    : w_(w),
      s_(w == 1.0 ? 0.0 : std::sqrt((1.0 - w) * (1.0 + w))),
      theta_(wrap_cycles(theta)),
      phi_(wrap_cycles(phi)),
      psi_(wrap_cycles(psi)) {}

BoundaryMatrix BoundaryMatrix::make(double w, double theta, double phi, double psi) {
  if (!(w >= 0.0 && w <= 1.0)) {
    std::ostringstream msg;
    msg << "w must lie in [0,1], got " << w;
    fail(ErrorCode::RangeViolation, msg.str());
  }
  if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(psi)) {
    fail(ErrorCode::RangeViolation, "phases must be finite");
  }
  return BoundaryMatrix(w, theta, phi, psi);
}

BoundaryMatrix BoundaryMatrix::from_su2(const SU2Form& form) {
  auto cycles_of = [](cx z) { return std::arg(z) / two_pi; };
  const double abs_a = std::abs(form.a);
  double w = form.b == cx{} ? 1.0 : std::min(abs_a, 1.0);
  const double phi = abs_a > 0.0 ? -cycles_of(form.a) : 0.0;
  const double psi = form.b != cx{} ? -cycles_of(form.b) : 0.0;
  const double theta = cycles_of(form.det_phase);
  if (form.a == cx{}) w = 0.0;
  return make(w, theta, phi, psi);
}

Regime BoundaryMatrix::regime() const noexcept {
  if (w_ == 0.0) return Regime::Decoupled;
  if (w_ == 1.0) return Regime::Transparent;
  return Regime::Generic;
}

Matrix2 BoundaryMatrix::matrix() const noexcept {
  return {{{w_ * phasor(phi_), -s_ * phasor(theta_ - psi_)},
           {s_ * phasor(psi_), w_ * phasor(theta_ - phi_)}}};
}

SU2Form BoundaryMatrix::su2() const noexcept {
  return {w_ * phasor(-phi_), s_ * phasor(-psi_), phasor(theta_)};
}

double boundary_residual(const BoundaryMatrix& b, const BoundaryTrace& trace) noexcept {
  const Vector2 lhs = matvec(b.matrix(), trace.rho1);
  return std::max(std::abs(lhs[0] - trace.rho2[0]), std::abs(lhs[1] - trace.rho2[1]));
}

}  // namespace lapis
