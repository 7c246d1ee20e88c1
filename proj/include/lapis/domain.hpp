#pragma once

#include <array>
#include <limits>
#include <string_view>

#include "lapis/phase.hpp"

namespace lapis {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct Interval {
  double lo;
  double hi;

  double length() const noexcept { return hi - lo; }
  bool contains_open(double x) const noexcept { return lo < x && x < hi; }
};

enum class Component { Minus, Zero, Plus };
inline constexpr std::array<Component, 3> all_components{Component::Minus, Component::Zero,
                                                          Component::Plus};
std::string_view to_string(Component c) noexcept;

enum class Region { IMinus, Barrier1, IZero, Barrier2, IPlus, Boundary };
std::string_view to_string(Region r) noexcept;

// Complement of the barriers [0,1] and [alpha,beta]:
// I- = (-inf, 0), I0 = (1, alpha), I+ = (beta, inf).
class ExteriorDomain {
public:
  static ExteriorDomain make(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  // Length of I0; every lattice translate series steps by this amount.
  double lattice_step() const noexcept { return alpha_ - 1.0; }

  Interval component(Component c) const noexcept;
  Interval barrier1() const noexcept { return {0.0, 1.0}; }
  Interval barrier2() const noexcept { return {alpha_, beta_}; }

  Region classify(double x) const noexcept;
  bool in_omega(double x) const noexcept;

private:
  ExteriorDomain(double alpha, double beta) : alpha_(alpha), beta_(beta) {}
  double alpha_;
  double beta_;
};

// Affine change of variables taking a pair of disjoint closed intervals
// [p, q] < [r, u] onto the normal form [0,1], [alpha, beta].
struct AffineNormalization {
  ExteriorDomain domain;
  double scale;   // normal = (x - origin) * scale
  double origin;

  double to_normal(double x) const noexcept { return (x - origin) * scale; }
  double from_normal(double y) const noexcept { return origin + y / scale; }
};

AffineNormalization normalize_intervals(Interval first, Interval second);

enum class Regime { Decoupled, Generic, Transparent };
std::string_view to_string(Regime r) noexcept;

using Matrix2 = std::array<std::array<cx, 2>, 2>;
using Vector2 = std::array<cx, 2>;

Matrix2 adjoint(const Matrix2& m) noexcept;
Matrix2 multiply(const Matrix2& a, const Matrix2& b) noexcept;
Vector2 matvec(const Matrix2& m, const Vector2& v) noexcept;
cx determinant(const Matrix2& m) noexcept;
double max_abs_difference(const Matrix2& a, const Matrix2& b) noexcept;

struct SU2Form {
  cx a;          // w e(-phi)
  cx b;          // s e(-psi)
  cx det_phase;  // e(theta)
};

// The unitary boundary matrix
//   [[ w e(phi),  -s e(theta-psi) ],
//    [ s e(psi),   w e(theta-phi) ]],   s = sqrt(1 - w^2),
// imposing B (f(1), f(beta)) = (f(0), f(alpha)).
class BoundaryMatrix {
public:
  static BoundaryMatrix make(double w, double theta, double phi, double psi);
  static BoundaryMatrix from_su2(const SU2Form& form);

  double w() const noexcept { return w_; }
  // sqrt(1 - w^2): modulus of the SU(2) entry b, the per-bounce reflection amplitude.
  double s() const noexcept { return s_; }
  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  double psi() const noexcept { return psi_; }
  Regime regime() const noexcept;

  Matrix2 matrix() const noexcept;
  SU2Form su2() const noexcept;

private:
  BoundaryMatrix(double w, double theta, double phi, double psi);
  double w_;
  double s_;
  double theta_;
  double phi_;
  double psi_;
};

// One-sided boundary values of a function on the exterior domain:
// rho1 = (f(1+), f(beta+)), rho2 = (f(0-), f(alpha-)).
struct BoundaryTrace {
  Vector2 rho1;
  Vector2 rho2;
};

// max |B rho1 - rho2|: zero exactly when the trace satisfies the B condition.
double boundary_residual(const BoundaryMatrix& b, const BoundaryTrace& trace) noexcept;

}  // namespace lapis
