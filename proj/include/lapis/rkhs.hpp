#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lapis/domain.hpp"

namespace lapis {

enum class Endpoint { Left, Right };

// A function on one interval together with its derivative, enough for the
// first-order Sobolev inner product.
struct H1Function {
  std::function<cx(double)> value;
  std::function<cx(double)> derivative;
};

// integral over J of conj(k) f + conj(k') f'. Half-lines are cut where the
// exponential kernels drop below 1e-17.
cx h1_inner(const H1Function& k, const H1Function& f, Interval j, double tol = 1e-12);

// cosh(b - x)/sinh(b - a) at the left end, cosh(x - a)/sinh(b - a) at the right;
// zero outside [a, b].
double kernel_endpoint(Interval j, Endpoint which, double x);
// The interior kernel in its printed form
//   (sinh(b-x) cosh(b-y) + sinh(x-a) cosh(y-a)) / sinh(b-a)^2.
// Smooth in y, it reproduces exactly the solutions of f'' = f.
double kernel_interior(Interval j, double x, double y);
// Green's kernel cosh(min - a) cosh(b - max)/sinh(b - a), reproducing every H1(J) function.
double kernel_interior_green(Interval j, double x, double y);
// Kernels of the finite end of a half-line: exp(x - b) on (-inf, b), exp(a - x) on (a, inf).
double kernel_half_line(Interval j, double x);

H1Function endpoint_kernel(Interval j, Endpoint which);
H1Function interior_kernel(Interval j, double x);
H1Function green_kernel(Interval j, double x);
H1Function half_line_kernel(Interval j);

// Gram matrix [k(x_i, x_j)] and its smallest eigenvalue.
std::vector<std::vector<double>> gram_matrix(const std::function<double(double, double)>& kernel,
                                             std::span<const double> points);
double min_eigenvalue(const std::vector<std::vector<double>>& gram);
double max_asymmetry(const std::vector<std::vector<double>>& gram);

// f(1) g(1)* - f(0) g(0)* + f(beta) g(beta)* - f(alpha) g(alpha)*.
cx boundary_form(const BoundaryTrace& f, const BoundaryTrace& g) noexcept;
// max |B rho1(f) - rho2(f)|.
double domain_membership_residual(const BoundaryMatrix& b, const BoundaryTrace& f) noexcept;

// A function on the exterior domain, one piece per component.
struct PiecewiseH1 {
  H1Function minus;
  H1Function zero;
  H1Function plus;
};
PiecewiseH1 eigenfunction_pieces(const BoundaryMatrix& b, const ExteriorDomain& d, double lambda);
// Boundary values read off by pairing with the four endpoint kernels.
BoundaryTrace kernel_traces(const ExteriorDomain& d, const PiecewiseH1& f, double tol = 1e-12);
// The same membership test phrased as orthogonality to k_R - B k_L.
double kernel_membership_residual(const BoundaryMatrix& b, const ExteriorDomain& d, const PiecewiseH1& f,
                                  double tol = 1e-12);

}  // namespace lapis
