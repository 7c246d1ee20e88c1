#include "lapis/eigen.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "lapis/error.hpp"

namespace lapis {

void require_coupled(const BoundaryMatrix& b, const char* op) {
  if (b.regime() == Regime::Decoupled)
    fail(ErrorCode::DegenerateRegime, std::string(op) + " needs w > 0 (w == 0 decouples I0)");
}

namespace {
void require_domain_point(const ExteriorDomain& d, double x) {
  if (!d.in_omega(x)) fail(ErrorCode::OutOfDomain, "x = " + std::to_string(x) + " is not in an open component");
}
}  // namespace

cx transfer_H(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda) {
  require_coupled(b, "transfer_H");
  return 1.0 / (1.0 - b.s() * phasor(-b.psi() + d.lattice_step() * lambda));
}

EigenCoefficients eigen_coeffs(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda) {
  require_coupled(b, "eigen_coeffs");
  const double s = b.s(), w = b.w(), l = d.lattice_step();
  const cx lead = 1.0 - s * phasor(-b.psi() + l * lambda);
  const cx a = phasor(b.phi() + lambda) * lead / w;
  const cx c = phasor(b.phi() - b.theta() - (d.beta() - d.alpha()) * lambda) *
               (1.0 - s * phasor(b.psi() - l * lambda)) / w;
  return {lambda, a, c, cx{1.0, 0.0}, 1.0 / lead, std::abs(a)};
}

std::pair<cx, cx> eigen_coeffs_solve(const BoundaryMatrix& b, const ExteriorDomain& d,
                                     double lambda) {
  require_coupled(b, "eigen_coeffs_solve");
  // Unknowns (a, c); b = 1 fixed. From B (f(1), f(beta)) = (f(0), f(alpha)):
  //   B00 e(lambda) + B01 c e(beta lambda) = a
  //   B10 e(lambda) + B11 c e(beta lambda) = e(alpha lambda)
  const Matrix2 m = b.matrix();
  const cx e1 = phasor(lambda), eb = phasor(d.beta() * lambda), ea = phasor(d.alpha() * lambda);
  Eigen::Matrix2cd sys;
  sys << cx{-1.0, 0.0}, m[0][1] * eb, cx{0.0, 0.0}, m[1][1] * eb;
  Eigen::Vector2cd rhs;
  rhs << -m[0][0] * e1, ea - m[1][0] * e1;
  const Eigen::Vector2cd sol = sys.fullPivLu().solve(rhs);
  return {sol(0), sol(1)};
}

double boundary_system_residual(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda,
                                cx a, cx c) {
  const Matrix2 m = b.matrix();
  const cx e1 = phasor(lambda), eb = phasor(d.beta() * lambda), ea = phasor(d.alpha() * lambda);
  const cx r1 = m[0][0] * e1 + m[0][1] * c * eb - a;
  const cx r2 = m[1][0] * e1 + m[1][1] * c * eb - ea;
  return std::max(std::abs(r1), std::abs(r2));
}

cx eigenfunction_eval(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda, double x) {
  require_coupled(b, "eigenfunction_eval");
  require_domain_point(d, x);
  const cx wave = phasor(lambda * x);
  switch (d.classify(x)) {
    case Region::IMinus: return eigen_coeffs(b, d, lambda).a * wave;
    case Region::IPlus: return eigen_coeffs(b, d, lambda).c * wave;
    default: return wave;
  }
}

BoundaryTrace eigenfunction_trace(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda) {
  const auto k = eigen_coeffs(b, d, lambda);
  return {{phasor(lambda), k.c * phasor(d.beta() * lambda)}, {k.a, phasor(d.alpha() * lambda)}};
}

cx scattering_matrix(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda) {
  const auto k = eigen_coeffs(b, d, lambda);
  return k.c / k.a;
}

double ScatteringRoutes::max_pairwise_gap() const noexcept {
  return std::max({std::abs(ratio - closed_form), std::abs(ratio - decomposition),
                   std::abs(closed_form - decomposition)});
}

ScatteringRoutes scattering_matrix_routes(const BoundaryMatrix& b, const ExteriorDomain& d,
                                          double lambda) {
  require_coupled(b, "scattering_matrix_routes");
  const double s = b.s(), w = b.w(), l = d.lattice_step();
  const double delay = d.beta() - d.alpha() + 1.0;
  const cx prefactor = phasor(-b.theta() - delay * lambda);
  const cx closed = prefactor * (1.0 - s * phasor(b.psi() - l * lambda)) /
                    (1.0 - s * phasor(-b.psi() + l * lambda));
  const cx resonance = prefactor * w * w * transfer_H(b, d, lambda);
  const cx direct = s * phasor(b.psi() - b.theta() - d.beta() * lambda);
  return {scattering_matrix(b, d, lambda), closed, resonance - direct};
}

BoundStateSpectrum bound_state_spectrum(const BoundaryMatrix& b, const ExteriorDomain& d, int n_lo,
                                        int n_hi) {
  if (b.regime() != Regime::Decoupled) return {SpectrumType::PureContinuous, {}};
  BoundStateSpectrum out{SpectrumType::EmbeddedBoundStates, {}};
  const double l = d.lattice_step();
  for (int n = n_lo; n <= n_hi; ++n) out.levels.push_back((b.psi() + n) / l);
  return out;
}

namespace {
void require_decoupled(const BoundaryMatrix& b, const char* op) {
  if (b.regime() != Regime::Decoupled)
    fail(ErrorCode::NotDecoupled, std::string(op) + " is the w == 0 path");
}
}  // namespace

cx bound_state_eval(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda, double x) {
  require_decoupled(b, "bound_state_eval");
  require_domain_point(d, x);
  return d.classify(x) == Region::IZero ? phasor(lambda * x) : cx{};
}

cx decoupled_continuum_eval(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda,
                            double x) {
  require_decoupled(b, "decoupled_continuum_eval");
  require_domain_point(d, x);
  switch (d.classify(x)) {
    case Region::IMinus: return -phasor(b.theta() - b.psi() + d.beta() * lambda) * phasor(lambda * x);
    case Region::IPlus: return phasor(lambda * x);
    default: return {};
  }
}

BoundaryTrace bound_state_trace(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda) {
  require_decoupled(b, "bound_state_trace");
  return {{phasor(lambda), cx{}}, {cx{}, phasor(d.alpha() * lambda)}};
}

BoundaryTrace decoupled_continuum_trace(const BoundaryMatrix& b, const ExteriorDomain& d,
                                        double lambda) {
  require_decoupled(b, "decoupled_continuum_trace");
  return {{cx{}, phasor(d.beta() * lambda)}, {-phasor(b.theta() - b.psi() + d.beta() * lambda), cx{}}};
}

}  // namespace lapis
