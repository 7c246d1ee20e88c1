#pragma once

#include <variant>
#include <vector>

#include "lapis/domain.hpp"

namespace lapis {

// sigma_B(d lambda) = m^-2(lambda) d lambda: a Poisson kernel in the
// variable 2 pi ((alpha-1) lambda - psi) with radius s = sqrt(1 - w^2).
class SpectralDensity {
public:
  static SpectralDensity make(const BoundaryMatrix& b, const ExteriorDomain& d);

  double operator()(double lambda) const noexcept;
  double period() const noexcept { return 1.0 / step_; }
  double b_modulus() const noexcept { return s_; }
  double lower_bound() const noexcept { return (1.0 - s_) / (1.0 + s_); }
  double upper_bound() const noexcept { return (1.0 + s_) / (1.0 - s_); }
  // Location of the density maximum inside [0, period).
  double peak() const noexcept;

  const BoundaryMatrix& boundary() const noexcept { return b_; }
  const ExteriorDomain& domain() const noexcept { return d_; }

private:
  SpectralDensity(const BoundaryMatrix& b, const ExteriorDomain& d);
  BoundaryMatrix b_;
  ExteriorDomain d_;
  double s_;
  double step_;
};

// Adaptive Simpson over [0, period], split at the peak.
double period_integral(const SpectralDensity& sd, double abs_tol = 1e-12);

// Integral of the density over [lo, hi], splitting at every peak inside.
double density_mass(const SpectralDensity& sd, double lo, double hi, double abs_tol = 1e-12);

// a_k = s^|k| e(-k psi) for |k| <= K, so that
// m^-2(lambda) = sum_k a_k e(k (alpha-1) lambda).
struct FourierCoefficientTable {
  int order;  // K
  double lattice_step;
  double s;
  std::vector<cx> coefficients;  // index k + K

  cx at(int k) const { return coefficients.at(static_cast<std::size_t>(k + order)); }
  double tail_bound() const noexcept;
  cx partial_sum(double lambda) const noexcept;
};

FourierCoefficientTable fourier_coeffs(const BoundaryMatrix& b, const ExteriorDomain& d, int order);
// Smallest K whose tail bound is <= tol.
int default_fourier_order(const BoundaryMatrix& b, double tol = 1e-12);
double fourier_tail_bound(double s, int order) noexcept;

struct CombSample {
  double w;
  double window_mass;
  double period_mass;
  double off_window_mass;
};

std::vector<CombSample> comb_limit_diagnostic(const ExteriorDomain& d, double psi,
                                              const std::vector<double>& w_sequence,
                                              double window_width);

// The w == 0 measure: Lebesgue (continuum through I- and I+) plus point
// masses on the bound-state lattice. The atom normalisation is left
// symbolic: only the per-period concentration 1/(alpha-1) is recorded.
struct AbsolutelyContinuous {
  SpectralDensity density;
};
struct MixedMeasure {
  double continuum_density;  // 1
  double lattice_offset;     // psi / (alpha-1)
  double lattice_spacing;    // 1 / (alpha-1)
  double per_period_concentration;
  std::vector<double> atoms_in(double lo, double hi) const;
};
using SpectralMeasure = std::variant<AbsolutelyContinuous, MixedMeasure>;

SpectralMeasure spectral_measure(const BoundaryMatrix& b, const ExteriorDomain& d);

}  // namespace lapis
