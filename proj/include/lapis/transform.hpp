#pragma once

#include <span>
#include <vector>

#include "lapis/domain.hpp"
#include "lapis/kernels.hpp"
#include "lapis/multiplier.hpp"
#include "lapis/packet.hpp"
#include "lapis/quadrature.hpp"

namespace lapis {

enum class Provenance { Analytic, Quadrature };

struct TransformSample {
  std::vector<double> lambda_grid;  // strictly increasing
  std::vector<cx> values;
  Provenance provenance = Provenance::Analytic;
};

// (V f)(lambda) = conj(a) f^_-(lambda) + f^_0(lambda) + conj(c) f^_+(lambda).
cx transform_value(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, double lambda);
TransformSample forward_transform(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                  std::span<const double> lambda_grid,
                                  kernels::Exec exec = kernels::Exec::Parallel);

// Composite Kronrod nodes on [-cutoff, cutoff]; the embedded Gauss weights
// give the error estimate.
struct LambdaGrid {
  double cutoff = 0.0;
  std::vector<double> nodes;
  std::vector<double> kronrod_weights;
  std::vector<double> gauss_weights;  // zero on the Kronrod-only nodes
};
LambdaGrid kronrod_grid(double cutoff, std::size_t panels);

// Cell averages of V* g on the given partition. Cells on a barrier stay zero.
// The estimate combines the Kronrod/Gauss gap with a 1/lambda tail
// extrapolated from the outermost panels; GridTooCoarse when its L2 size
// exceeds tol.
struct AdjointResult {
  StepPacket packet;
  double error_estimate = 0.0;
};
AdjointResult adjoint_transform(const BoundaryMatrix& b, const ExteriorDomain& d, const TransformSample& g,
                                const LambdaGrid& grid, std::span<const double> partition, double tol);

// f^(lambda) as a sum of terms coef e(freq lambda)/(lambda - pole), one per
// cell endpoint and wave.
std::vector<PoleTerm> fourier_pole_terms(const StepPacket& f);

struct SpectralQuadratureOptions {
  double cutoff = 40.0;      // raised automatically past the largest wave frequency
  double panel_width = 0.1;
  double abs_tol = 1e-11;
  double series_eps = 1e-14;  // truncation of the density-type series in the tail
  kernels::Exec exec = kernels::Exec::Parallel;
};

struct SpectralInner {
  cx value;
  cx core;  // integral over [-cutoff, cutoff]
  cx tail;  // exact remainder over |lambda| > cutoff
  double error_estimate = 0.0;
};

// <V f, V g> in L2(sigma): the integral of conj(Vf) Vg |a|^-2 over the line.
SpectralInner spectral_inner(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                             const StepPacket& g, const SpectralQuadratureOptions& opts = {});
// Same quantity via the block multipliers: sum_ij <f_i, M_ij g_j>.
cx spectral_inner_packets(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                          const StepPacket& g, double eps = default_truncation_eps);

}  // namespace lapis
