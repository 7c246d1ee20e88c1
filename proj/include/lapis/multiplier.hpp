#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "lapis/domain.hpp"
#include "lapis/packet.hpp"

namespace lapis {

// Which Fourier multiplier a series stands for. The names follow the functions
// of lambda they represent: AInv = 1/a, AInvC = c/a (the S-matrix),
// AConjInv = 1/conj(a), MSquaredInv = |a|^-2 (the spectral density), and so on.
enum class MultiplierKind {
  Identity,
  AInv,
  CInv,
  AInvC,
  CInvA,
  AConjInv,
  CConjInv,
  MSquaredInv,
  A,
  C,
  Custom,
};
std::string_view to_string(MultiplierKind k) noexcept;
MultiplierKind conjugate_kind(MultiplierKind k) noexcept;

// Geometric run of coefficients: index start + direction*j carries
// first * (ratio_modulus e(ratio_phase))^j for 0 <= j < count.
struct CoefficientRun {
  std::int64_t start = 0;
  int direction = 1;
  std::int64_t count = 1;
  cx first{1.0, 0.0};
  double ratio_modulus = 0.0;
  double ratio_phase = 0.0;  // cycles

  std::int64_t index(std::int64_t j) const noexcept { return start + direction * j; }
  cx term(std::int64_t j) const noexcept;
};

// M(lambda) = scalar e(base_shift lambda) sum_n c_n e(n lattice_step lambda),
// acting on packets as f -> scalar sum_n c_n f(x + base_shift + n lattice_step).
// Coefficients live in lazy runs; for w close to 0 a run can hold millions of
// terms, so nothing is expanded unless asked.
struct MultiplierSeries {
  MultiplierKind kind = MultiplierKind::Identity;
  cx scalar{1.0, 0.0};
  double base_shift = 0.0;
  double lattice_step = 1.0;
  std::vector<CoefficientRun> runs;
  double truncation_error = 0.0;  // sup-norm bound on the dropped tail of M

  cx value(double lambda) const noexcept;
  cx coefficient(std::int64_t n) const noexcept;
  std::size_t term_count() const noexcept;
  // Sum of |scalar c_n| over the stored terms.
  double l1_norm() const noexcept;
  // Dense coefficient map; throws RangeViolation past max_terms.
  std::map<std::int64_t, cx> materialize(std::size_t max_terms = 1'000'000) const;
};

inline constexpr double default_truncation_eps = 1e-12;

// Number of terms j >= 0 with sum_{j >= count} r^j <= eps.
std::int64_t geometric_count(double r, double eps);

MultiplierSeries make_multiplier(MultiplierKind kind, const BoundaryMatrix& b, const ExteriorDomain& d,
                                 double eps = default_truncation_eps);
MultiplierSeries identity_multiplier(double lattice_step);
MultiplierSeries conjugate_multiplier(const MultiplierSeries& m);
// Product of the two multipliers (convolution of materialized coefficients).
MultiplierSeries compose(const MultiplierSeries& m1, const MultiplierSeries& m2,
                         std::size_t max_terms = 200'000);

// Untruncated value of the function a kind represents, from the eigen coefficients.
cx multiplier_exact_value(MultiplierKind kind, const BoundaryMatrix& b, const ExteriorDomain& d,
                          double lambda);

// scalar sum_n c_n f(x + base_shift + n step). The full form expands every
// stored term (RangeViolation past max_terms terms times cells); the windowed
// form only touches the terms landing in the window and clips to it.
StepPacket apply_multiplier(const MultiplierSeries& m, const StepPacket& f,
                            std::size_t max_terms = 5'000'000);
StepPacket apply_multiplier(const MultiplierSeries& m, const StepPacket& f, Interval window);
// (M f)(x) at one point.
cx apply_pointwise(const MultiplierSeries& m, const StepPacket& f, double x);

}  // namespace lapis
