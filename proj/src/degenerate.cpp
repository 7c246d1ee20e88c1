#include "lapis/degenerate.hpp"

#include <algorithm>
#include <cmath>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"

namespace lapis {

namespace {

constexpr Interval left_half{-infinity, 0.0};
constexpr Interval right_half{0.0, infinity};

double s_of(double w) { return w == 1.0 ? 0.0 : std::sqrt((1.0 - w) * (1.0 + w)); }

}  // namespace

DegenerateModel DegenerateModel::one_point(double theta) {
  if (!std::isfinite(theta)) fail(ErrorCode::RangeViolation, "theta must be finite");
  return {Kind::OnePoint, theta, 0.0, 1.0};
}

DegenerateModel DegenerateModel::one_interval(double theta, double alpha) {
  if (!std::isfinite(theta)) fail(ErrorCode::RangeViolation, "theta must be finite");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorCode::OrderingViolation, "deleted interval needs alpha > 0");
  return {Kind::OneInterval, theta, alpha, 1.0};
}

DegenerateModel DegenerateModel::two_points(double w, double alpha) {
  if (!(w > 0.0 && w <= 1.0)) fail(ErrorCode::RangeViolation, "two-point model needs 0 < w <= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorCode::OrderingViolation, "two-point model needs alpha > 0");
  return {Kind::TwoPoints, 0.0, alpha, w};
}

std::string_view to_string(DegenerateModel::Kind k) noexcept {
  switch (k) {
    case DegenerateModel::Kind::OnePoint: return "one_point";
    case DegenerateModel::Kind::OneInterval: return "one_interval";
    case DegenerateModel::Kind::TwoPoints: return "two_points";
  }
  return "?";
}

StepPacket degenerate_V(const DegenerateModel& m, const StepPacket& f) {
  PacketBuilder out;
  switch (m.kind) {
    case DegenerateModel::Kind::OnePoint:
      out.add(f, phasor(m.theta), 0.0, left_half);
      out.add(f, 1.0, 0.0, right_half);
      break;
    case DegenerateModel::Kind::OneInterval:
      out.add(f, phasor(m.theta), 0.0, left_half);
      out.add(f, 1.0, m.alpha, {m.alpha, infinity});
      break;
    case DegenerateModel::Kind::TwoPoints: {
      const double s = s_of(m.w);
      out.add(f, 1.0 / m.w, 0.0, left_half);
      out.add(f, -s / m.w, -m.alpha, left_half);
      out.add(f, 1.0, 0.0, {0.0, m.alpha});
      out.add(f, 1.0 / m.w, 0.0, {m.alpha, infinity});
      out.add(f, -s / m.w, m.alpha, {m.alpha, infinity});
      break;
    }
  }
  return out.build();
}

StepPacket degenerate_Vstar(const DegenerateModel& m, const StepPacket& g) {
  PacketBuilder out;
  switch (m.kind) {
    case DegenerateModel::Kind::OnePoint:
      out.add(g, phasor(-m.theta), 0.0, left_half);
      out.add(g, 1.0, 0.0, right_half);
      break;
    case DegenerateModel::Kind::OneInterval:
      out.add(g, phasor(-m.theta), 0.0, left_half);
      out.add(restrict_to(g, {m.alpha, infinity}), 1.0, -m.alpha, right_half);
      break;
    case DegenerateModel::Kind::TwoPoints: {
      const double s = s_of(m.w);
      out.add(g, 1.0 / m.w, 0.0, left_half);
      out.add(g, -s / m.w, m.alpha, left_half);
      out.add(g, 1.0, 0.0, {0.0, m.alpha});
      out.add(g, 1.0 / m.w, 0.0, {m.alpha, infinity});
      out.add(g, -s / m.w, -m.alpha, {m.alpha, infinity});
      break;
    }
  }
  return out.build();
}

StepPacket degenerate_evolve(const DegenerateModel& m, const StepPacket& g, double t) {
  PacketBuilder out;
  switch (m.kind) {
    case DegenerateModel::Kind::OnePoint: {
      // Content moves left; crossing 0 leftward multiplies by e(theta).
      const StepPacket gm = restrict_to(g, left_half), gp = restrict_to(g, right_half);
      out.add(gm, 1.0, -t, left_half);
      out.add(gp, phasor(m.theta), -t, left_half);
      out.add(gp, 1.0, -t, right_half);
      out.add(gm, phasor(-m.theta), -t, right_half);
      break;
    }
    case DegenerateModel::Kind::OneInterval: {
      // As above, with the deleted interval skipped in one jump.
      const StepPacket gm = restrict_to(g, left_half), gp = restrict_to(g, {m.alpha, infinity});
      out.add(gm, 1.0, -t, left_half);
      out.add(gp, phasor(m.theta), -t - m.alpha, left_half);
      out.add(gp, 1.0, -t, {m.alpha, infinity});
      out.add(gm, phasor(-m.theta), -t + m.alpha, {m.alpha, infinity});
      break;
    }
    case DegenerateModel::Kind::TwoPoints:
      fail(ErrorCode::ValidationError, "two-point evolution is only available on the Fourier side");
  }
  return out.build();
}

double degenerate_conjugation_check(const DegenerateModel& m, const StepPacket& f, double t) {
  const StepPacket lhs = degenerate_Vstar(m, degenerate_evolve(m, degenerate_V(m, f), t));
  return distance(lhs, translate(f, -t));
}

cx two_point_a(double w, double alpha, double xi) noexcept {
  return (1.0 - s_of(w) * phasor(xi * alpha)) / w;
}

double two_point_a_abs2(double w, double alpha, double xi) noexcept {
  const double s = s_of(w);
  return (2.0 - w * w) / (w * w) - 2.0 * s / (w * w) * std::cos(two_pi * wrap_cycles(alpha * xi));
}

double two_point_weight_residual(double w, double alpha, std::span<const double> xi_grid) {
  const double s = s_of(w);
  double worst = 0.0;
  for (double xi : xi_grid) {
    const cx a = two_point_a(w, alpha, xi), c = std::conj(a);
    auto psi = [&](double x) {
      const cx coef = x < 0.0 ? a : (x < alpha ? cx{1.0} : c);
      return coef * phasor(x * xi);
    };
    const double weight = two_point_a_abs2(w, alpha, xi);
    for (double frac : {0.1, 0.37, 0.5, 0.83}) {
      const double xm = -3.0 * alpha * frac, x0 = alpha * frac, xp = alpha * (1.0 + 3.0 * frac);
      const cx vm = (psi(xm) - s * psi(xm - alpha)) / w;
      const cx vp = (psi(xp) - s * psi(xp + alpha)) / w;
      worst = std::max({worst, std::abs(vm / phasor(xm * xi) - weight), std::abs(psi(x0) / phasor(x0 * xi) - 1.0),
                        std::abs(vp / phasor(xp * xi) - weight)});
    }
  }
  return worst;
}

StepPacket two_point_weight_operator(double w, double alpha, const StepPacket& f) {
  const double s = s_of(w);
  PacketBuilder out;
  for (Interval side : {Interval{-infinity, 0.0}, Interval{alpha, infinity}}) {
    out.add(f, (1.0 + s * s) / (w * w), 0.0, side);
    out.add(f, -s / (w * w), -alpha, side);
    out.add(f, -s / (w * w), alpha, side);
  }
  out.add(f, 1.0, 0.0, {0.0, alpha});
  return out.build();
}

MultiplierBounds degenerate_multiplier_bounds(double w, double alpha, std::span<const double> xi_grid) {
  if (!(w > 0.0 && w <= 1.0)) fail(ErrorCode::RangeViolation, "multiplier bounds need 0 < w <= 1");
  if (xi_grid.empty()) fail(ErrorCode::ValidationError, "empty xi grid");
  MultiplierBounds r{infinity, 0.0, w / 2.0, 2.0 / w, 0.0};
  for (double xi : xi_grid) {
    const double m = std::abs(two_point_a(w, alpha, xi));
    r.min_abs = std::min(r.min_abs, m);
    r.max_abs = std::max(r.max_abs, m);
    r.closed_form_gap = std::max(r.closed_form_gap, std::abs(m * m - two_point_a_abs2(w, alpha, xi)));
  }
  return r;
}

double compare_with_main_model(double w, double alpha, double gap, std::span<const double> xi_grid) {
  const auto b = BoundaryMatrix::make(w, 0.0, 0.0, 0.0);
  const auto d = ExteriorDomain::make(1.0 + alpha, 1.0 + alpha + gap);
  double worst = 0.0;
  for (double xi : xi_grid)
    worst = std::max(worst, std::abs(std::abs(eigen_coeffs(b, d, xi).a) - std::abs(two_point_a(w, alpha, xi))));
  return worst;
}

}  // namespace lapis
