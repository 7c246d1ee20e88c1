#include "lapis/spectral.hpp"

#include <cmath>
#include <numbers>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"
#include "lapis/quadrature.hpp"

namespace lapis {

SpectralDensity::SpectralDensity(const BoundaryMatrix& b, const ExteriorDomain& d)
    : b_(b), d_(d), s_(b.s()), step_(d.lattice_step()) {}

SpectralDensity SpectralDensity::make(const BoundaryMatrix& b, const ExteriorDomain& d) {
  if (b.regime() == Regime::Decoupled)
    fail(ErrorCode::DegenerateRegime, "density: w == 0 gives Lebesgue plus a Dirac comb");
  return SpectralDensity(b, d);
}

double SpectralDensity::operator()(double lambda) const noexcept {
  // 1 - 2 s cos(2 pi x) + s^2 = (1-s)^2 + 4 s sin^2(pi x), which keeps the
  // denominator accurate near the peak.
  const double x = step_ * lambda - b_.psi();
  const double r = x - std::nearbyint(x);
  const double sn = std::sin(std::numbers::pi * r);
  const double one_minus = 1.0 - s_;
  return (one_minus * (1.0 + s_)) / (one_minus * one_minus + 4.0 * s_ * sn * sn);
}

double SpectralDensity::peak() const noexcept { return wrap_cycles(b_.psi()) / step_; }

double density_mass(const SpectralDensity& sd, double lo, double hi, double abs_tol) {
  if (!(lo < hi)) return 0.0;
  auto f = [&sd](double x) { return sd(x); };
  // Break the range at every peak so the adaptive rule always samples them.
  std::vector<double> cuts{lo};
  const double p = sd.period();
  double k0 = std::ceil((lo - sd.peak()) / p);
  for (double peak = sd.peak() + k0 * p; peak < hi; peak += p)
    if (peak > lo) cuts.push_back(peak);
  cuts.push_back(hi);
  double total = 0.0;
  const double share = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_adaptive<double>(f, cuts[i], cuts[i + 1], share).value;
  return total;
}

double period_integral(const SpectralDensity& sd, double abs_tol) {
  return density_mass(sd, 0.0, sd.period(), abs_tol);
}

double fourier_tail_bound(double s, int order) noexcept {
  if (s == 0.0) return 0.0;
  return 2.0 * std::pow(s, order + 1) / (1.0 - s);
}

double FourierCoefficientTable::tail_bound() const noexcept { return fourier_tail_bound(s, order); }

cx FourierCoefficientTable::partial_sum(double lambda) const noexcept {
  cx sum{};
  for (int k = -order; k <= order; ++k)
    sum += coefficients[static_cast<std::size_t>(k + order)] * phasor(k * lattice_step * lambda);
  return sum;
}

FourierCoefficientTable fourier_coeffs(const BoundaryMatrix& b, const ExteriorDomain& d, int order) {
  require_coupled(b, "fourier_coeffs");
  if (order < 0) fail(ErrorCode::RangeViolation, "fourier_coeffs: K must be >= 0");
  FourierCoefficientTable t{order, d.lattice_step(), b.s(), {}};
  t.coefficients.resize(static_cast<std::size_t>(2 * order + 1));
  for (int k = -order; k <= order; ++k) {
    const double mod = k == 0 ? 1.0 : std::pow(b.s(), std::abs(k));
    t.coefficients[static_cast<std::size_t>(k + order)] = mod * phasor(-k * b.psi());
  }
  return t;
}

int default_fourier_order(const BoundaryMatrix& b, double tol) {
  require_coupled(b, "default_fourier_order");
  const double s = b.s();
  if (s == 0.0) return 0;
  int k = 0;
  while (fourier_tail_bound(s, k) > tol) ++k;
  return k;
}

std::vector<CombSample> comb_limit_diagnostic(const ExteriorDomain& d, double psi,
                                              const std::vector<double>& w_sequence,
                                              double window_width) {
  const double period = 1.0 / d.lattice_step();
  if (!(window_width > 0.0 && window_width < period))
    fail(ErrorCode::RangeViolation, "comb window must be narrower than one period");
  for (std::size_t i = 0; i < w_sequence.size(); ++i) {
    if (!(w_sequence[i] > 0.0 && w_sequence[i] <= 1.0))
      fail(ErrorCode::RangeViolation, "comb w values must lie in (0, 1]");
    if (i > 0 && !(w_sequence[i] < w_sequence[i - 1]))
      fail(ErrorCode::OrderingViolation, "comb w sequence must be strictly decreasing");
  }
  std::vector<CombSample> out;
  for (double w : w_sequence) {
    const auto sd = SpectralDensity::make(BoundaryMatrix::make(w, 0.0, 0.0, psi), d);
    const double centre = sd.peak();
    const double half = 0.5 * window_width;
    const double inside = density_mass(sd, centre - half, centre + half);
    const double outside = density_mass(sd, centre + half, centre + period - half);
    out.push_back({w, inside, inside + outside, outside});
  }
  return out;
}

std::vector<double> MixedMeasure::atoms_in(double lo, double hi) const {
  std::vector<double> out;
  const double n0 = std::ceil((lo - lattice_offset) / lattice_spacing);
  for (double n = n0;; n += 1.0) {
    const double x = lattice_offset + n * lattice_spacing;
    if (x > hi) break;
    out.push_back(x);
  }
  return out;
}

SpectralMeasure spectral_measure(const BoundaryMatrix& b, const ExteriorDomain& d) {
  if (b.regime() != Regime::Decoupled) return AbsolutelyContinuous{SpectralDensity::make(b, d)};
  const double step = d.lattice_step();
  return MixedMeasure{1.0, wrap_cycles(b.psi()) / step, 1.0 / step, 1.0 / step};
}

}  // namespace lapis
