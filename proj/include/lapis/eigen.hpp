#pragma once

#include <utility>
#include <vector>

#include "lapis/domain.hpp"

namespace lapis {

// Coefficients of the generalized eigenfunction
//   psi_lambda = a e_lambda on I-, e_lambda on I0, c e_lambda on I+
// normalised so the I0 coefficient is 1.
struct EigenCoefficients {
  double lambda;
  cx a;
  cx c;
  cx b_norm{1.0, 0.0};
  cx h;      // 1 / (1 - s e(-psi + (alpha-1) lambda))
  double m;  // |a| = |c|
};

// Throw DegenerateRegime when w == 0.
void require_coupled(const BoundaryMatrix& b, const char* op);

cx transfer_H(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda);
EigenCoefficients eigen_coeffs(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda);

// Same pair (a, c), obtained by an LU solve of the two boundary equations.
std::pair<cx, cx> eigen_coeffs_solve(const BoundaryMatrix& b, const ExteriorDomain& d,
                                     double lambda);

// Max-norm residual of the boundary equations for the triple (a, 1, c).
double boundary_system_residual(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda,
                                cx a, cx c);

cx eigenfunction_eval(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda, double x);
BoundaryTrace eigenfunction_trace(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda);

cx scattering_matrix(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda);

struct ScatteringRoutes {
  cx ratio;          // c / a
  cx closed_form;    // ratio of the two Blaschke-type factors
  cx decomposition;  // resonance part plus direct reflection
  double max_pairwise_gap() const noexcept;
};
ScatteringRoutes scattering_matrix_routes(const BoundaryMatrix& b, const ExteriorDomain& d,
                                          double lambda);

enum class SpectrumType { PureContinuous, EmbeddedBoundStates };

struct BoundStateSpectrum {
  SpectrumType type;
  std::vector<double> levels;  // empty unless type == EmbeddedBoundStates
};

// Levels psi/(alpha-1) + n/(alpha-1), n_lo <= n <= n_hi, when w == 0.
BoundStateSpectrum bound_state_spectrum(const BoundaryMatrix& b, const ExteriorDomain& d, int n_lo,
                                        int n_hi);

// w == 0 eigenfunctions: the trapped chi0 e_lambda at a lattice level, and
// the continuum family -e(theta - psi + beta lambda) e_lambda on I-, e_lambda on I+.
cx bound_state_eval(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda, double x);
cx decoupled_continuum_eval(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda,
                            double x);
BoundaryTrace bound_state_trace(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda);
BoundaryTrace decoupled_continuum_trace(const BoundaryMatrix& b, const ExteriorDomain& d,
                                        double lambda);

}  // namespace lapis
