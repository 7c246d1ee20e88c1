#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lapis/domain.hpp"
#include "lapis/multiplier.hpp"
#include "lapis/packet.hpp"
#include "lapis/transform.hpp"

namespace lapis {

// Compression of the unitary group to L2(I0), t >= 0.
struct SemigroupState {
  StepPacket packet;
  double t = 0.0;
  double truncation_error = 0.0;
};

// restrict_I0(translate(density series applied to f, t)). f must live in I0.
SemigroupState compress_evolve(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, double t,
                               double eps = default_truncation_eps);
// Same operator through the full group: restrict_I0(evolve(f, t)).
SemigroupState compress_evolve_via_group(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                         double t, double eps = default_truncation_eps);

// sin(pi (lambda - xi)) / (pi (lambda - xi)), 1 on the diagonal.
double shannon_kernel(double lambda, double xi) noexcept;
// Integral of e(lambda x) over I0 = (1, alpha).
cx shannon_kernel_shifted(const ExteriorDomain& d, double lambda) noexcept;

// Integer samples f^(n), n_lo <= n <= n_hi, of a packet supported in the
// unit window [center - 1/2, center + 1/2].
struct ShannonBasisCoeffs {
  int n_lo = 0;
  int n_hi = -1;
  double center = 0.0;
  std::vector<cx> samples;
  double norm2 = 0.0;          // ||f||^2
  double tail_estimate = 0.0;  // ||f||^2 minus the windowed sum of |f^(n)|^2

  cx at(int n) const { return samples.at(static_cast<std::size_t>(n - n_lo)); }
  double sample_energy() const noexcept;
};
ShannonBasisCoeffs shannon_coeffs(const StepPacket& f, double center, int n_lo, int n_hi);
// sum_n e(-center (lambda - n)) f^(n) K(lambda, n).
cx shannon_interpolate(const ShannonBasisCoeffs& coeffs, double lambda) noexcept;

// Fourier side of the compressed evolution,
//   integral of K0(lambda - xi) e(-xi t) f^(xi) |a(xi)|^-2 d xi,
// K0 the transform of the indicator of I0. Core by panels plus the exact tail.
TransformSample semigroup_kernel_apply(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                       double t, std::span<const double> lambda_grid,
                                       const SpectralQuadratureOptions& opts = {});

// Sampled-coefficient energy of the compressed state against the 4/w^2 bound.
struct SampledCoefficientBound {
  double sampled_sum = 0.0;   // sum over the window of |(Z f)^(n)|^2
  double tail_estimate = 0.0;
  double bound = 0.0;         // 4/w^2 ||f||^2
  double margin = 0.0;        // bound - (sampled_sum + tail_estimate)
};
SampledCoefficientBound sampled_coefficient_bound(const BoundaryMatrix& b, const ExteriorDomain& d,
                                                  const StepPacket& f, double t, int n_window = 2000);

// chi_I0(x) f(x - t).
StepPacket spatial_semigroup(const ExteriorDomain& d, const StepPacket& f, double t);

// (R(lambda) f)(x) = integral_1^x exp(-lambda (x - y)) f(y) dy, per cell in closed form.
cx spatial_resolvent_at(const ExteriorDomain& d, cx lambda, const StepPacket& f, double x);
std::vector<cx> spatial_resolvent(const ExteriorDomain& d, cx lambda, const StepPacket& f,
                                  std::span<const double> xs);
double spatial_resolvent_norm2(const ExteriorDomain& d, cx lambda, const StepPacket& f, double tol = 1e-13);

// integral_0^inf exp(-t lambda) (Z(t) f)(x) dt by adaptive quadrature in t,
// for the spatial semigroup and for the compressed one.
cx laplace_spatial_at(const ExteriorDomain& d, cx lambda, const StepPacket& f, double x, double tol = 1e-12);
cx laplace_compressed_at(const BoundaryMatrix& b, const ExteriorDomain& d, cx lambda, const StepPacket& f,
                         double x, double tol = 1e-12, double eps = default_truncation_eps);
// Resolvent of the compressed semigroup summed over lattice translates:
// sum_{k >= 0} a_k (Volterra f)(x + k (alpha - 1)).
cx compressed_resolvent_at(const BoundaryMatrix& b, const ExteriorDomain& d, cx lambda, const StepPacket& f,
                           double x, double eps = default_truncation_eps);

struct ResolventComparison {
  double m0_squared = 0.0;            // |a(0)|^2
  double normalization_residual = 0;  // |m0^2 sum_k a_k - 1|
  double laplace_vs_series = 0.0;     // L2 gap between two routes for the compressed resolvent
  double discrepancy = 0.0;           // L2 gap to the spatial resolvent at lambda m0^2
  double relative_discrepancy = 0.0;  // discrepancy / ||compressed resolvent f||
};
ResolventComparison resolvent_comparison(const BoundaryMatrix& b, const ExteriorDomain& d, cx lambda,
                                         const StepPacket& f, double tol = 1e-10);

// ||Z(t) e_n chi_I0||^2 for unit-length I0, two ways: the packet engine
// (oscillatory cells) and pointwise lambda-quadrature of the Fourier side.
struct DecaySample {
  double t = 0.0;
  double engine = 0.0;
  double oracle = 0.0;
};
std::vector<DecaySample> norm_decay_profile(const BoundaryMatrix& b, const ExteriorDomain& d, int n,
                                            std::span<const double> t_grid, bool with_oracle = true);

// || (Z_sp(h) f - f)/h + f' ||_{L2(I0)} for a differentiable f given with its derivative.
double spatial_generator_residual(const ExteriorDomain& d, const std::function<double(double)>& f,
                                  const std::function<double(double)>& df, double h);

}  // namespace lapis
