#pragma once

#include <vector>

#include "lapis/domain.hpp"
#include "lapis/multiplier.hpp"
#include "lapis/packet.hpp"

namespace lapis {

struct EvolutionResult {
  StepPacket packet;
  double truncation_error = 0.0;  // L2 bound from the dropped series tails
  double t = 0.0;
};

// Throws OutOfDomain when f puts mass on a barrier.
void require_in_omega(const ExteriorDomain& d, const StepPacket& f);

// The series carrying content from component `from` to component `to`.
MultiplierKind block_kind(Component to, Component from) noexcept;

// U(t) f for w > 0, any real t: on each target component i,
// sum_j restrict_i(translate(M_ij f_j, t)).
EvolutionResult evolve(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, double t,
                       double eps = default_truncation_eps);

// w == 0: I0 content circulates with a factor e(-psi) per wrap; I- and I+
// are spliced across the collapsed gap [0, beta] with factor -e(psi - theta)
// going right and its inverse going left.
EvolutionResult evolve_decoupled(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                 double t);

// Outgoing image of an incoming packet (support in I-): the direct reflection
// plus the resonance series, i.e. the c/a multiplier.
StepPacket scatter(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f_in,
                   double eps = default_truncation_eps);
// || U(t) f - translate(scatter(f), t) ||.
double scattering_gap(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f_in, double t,
                      double eps = default_truncation_eps);

enum class Representation { Incoming, Outgoing };
StepPacket translation_representation(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                      Representation which, double eps = default_truncation_eps);

// <f, U(t) g>.
cx correlation(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, const StepPacket& g,
               double t, double eps = default_truncation_eps);
// (1/2T) integral over [-T, T] of |<f, U(t) g>|^2, one value per T.
std::vector<double> cesaro_decay(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                 const StepPacket& g, const std::vector<double>& horizons,
                                 double abs_tol = 1e-10);

// P_i U(t) P_j f by evolving then restricting.
StepPacket block_matrix_entry(const BoundaryMatrix& b, const ExteriorDomain& d, Component i, Component j,
                              const StepPacket& f, double t, double eps = default_truncation_eps);
// Same block from the product weight a_i conj(a_j) |a|^-2 built by composing
// the finite a, c series with the density series.
StepPacket block_matrix_entry_composed(const BoundaryMatrix& b, const ExteriorDomain& d, Component i,
                                       Component j, const StepPacket& f, double t,
                                       double eps = default_truncation_eps);

}  // namespace lapis
