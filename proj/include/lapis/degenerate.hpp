#pragma once

#include <span>
#include <vector>

#include "lapis/packet.hpp"

namespace lapis {

// Point-deletion models. Each keeps its own layout:
//   OnePoint:    R \ {0}
//   OneInterval: R \ (0, alpha)
//   TwoPoints:   R \ {0, alpha}, all phases zero, 0 < w <= 1
// Time evolution follows f(x + t), the leftward convention of these models.
struct DegenerateModel {
  enum class Kind { OnePoint, OneInterval, TwoPoints };
  Kind kind;
  double theta = 0.0;
  double alpha = 0.0;
  double w = 1.0;

  static DegenerateModel one_point(double theta);
  static DegenerateModel one_interval(double theta, double alpha);
  static DegenerateModel two_points(double w, double alpha);
};

std::string_view to_string(DegenerateModel::Kind k) noexcept;

StepPacket degenerate_V(const DegenerateModel& m, const StepPacket& f);
StepPacket degenerate_Vstar(const DegenerateModel& m, const StepPacket& g);
// Unitary group on the model's domain, built from the boundary rule rather than from V.
// Not available for TwoPoints (its dynamics are only used through the Fourier side).
StepPacket degenerate_evolve(const DegenerateModel& m, const StepPacket& g, double t);

// L2 distance between V* U_t V f and f(. + t).
double degenerate_conjugation_check(const DegenerateModel& m, const StepPacket& f, double t);

// (1/w)(1 - s e(alpha xi)) and its modulus squared in cosine form.
cx two_point_a(double w, double alpha, double xi) noexcept;
double two_point_a_abs2(double w, double alpha, double xi) noexcept;

// max over xi and sample x of |V* psi_xi(x) / e(x xi) - weight(x, xi)| where
// weight is |a|^2 on chi_-, 1 on chi_0 and |c|^2 on chi_+.
double two_point_weight_residual(double w, double alpha, std::span<const double> xi_grid);
// (1 + s^2)/w^2 f - (s/w^2)(f(x + alpha) + f(x - alpha)) on chi_- and chi_+, f on chi_0.
StepPacket two_point_weight_operator(double w, double alpha, const StepPacket& f);

struct MultiplierBounds {
  double min_abs;
  double max_abs;
  double lower;  // w/2
  double upper;  // 2/w
  double closed_form_gap;  // max | |a|^2 direct - cosine form |
  bool within() const noexcept { return lower <= min_abs && max_abs <= upper; }
};
MultiplierBounds degenerate_multiplier_bounds(double w, double alpha, std::span<const double> xi_grid);

// max | |a_main(xi)| - |a_two_point(xi)| | with the two-interval model at alpha_main = 1 + alpha,
// beta_main = alpha_main + gap and zero phases.
double compare_with_main_model(double w, double alpha, double gap, std::span<const double> xi_grid);

}  // namespace lapis
