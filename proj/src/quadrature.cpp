#include "lapis/quadrature.hpp"

#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lapis {

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace {

// E(mu, L) = integral_L^inf e(mu u)/u du, mu != 0, L > 0.
cx exp_integral_tail(double mu, double L) {
  const double x = two_pi * std::abs(mu) * L;
  const double sign = mu > 0 ? 1.0 : -1.0;
  return {-gsl_sf_Ci(x), sign * (0.5 * std::numbers::pi - gsl_sf_Si(x))};
}

// F(mu, L) = integral_L^inf e(mu u)/u^2 du.
cx inverse_square_tail(double mu, double L) {
  if (std::abs(mu) < zero_frequency) return {1.0 / L, 0.0};
  return phasor(mu * L) / L + cx{0.0, two_pi * mu} * exp_integral_tail(mu, L);
}

// Integral of e(mu lambda)/(lambda - p) over |lambda| > cutoff. For mu = 0 the
// symmetric truncation leaves the principal-value remainder log((c+p)/(c-p)).
cx single_pole_tail(double mu, double p, double cutoff) {
  if (std::abs(mu) < zero_frequency) return {std::log((cutoff + p) / (cutoff - p)), 0.0};
  return phasor(mu * p) * (exp_integral_tail(mu, cutoff - p) - exp_integral_tail(-mu, cutoff + p));
}

cx double_pole_tail(double mu, double p, double cutoff) {
  return phasor(mu * p) * (inverse_square_tail(mu, cutoff - p) + inverse_square_tail(-mu, cutoff + p));
}

}  // namespace

cx tail_integral(const PoleTerm& term, double cutoff) {
  const double p = term.pole;
  if (!(cutoff > std::abs(p) + 1.0) ||
      (term.second_pole && !(cutoff > std::abs(*term.second_pole) + 1.0))) {
    throw std::invalid_argument("tail_integral: cutoff must exceed every pole by at least 1");
  }
  if (!term.second_pole) return term.coef * single_pole_tail(term.freq, p, cutoff);
  const double q = *term.second_pole;
  if (p == q) return term.coef * double_pole_tail(term.freq, p, cutoff);
  return term.coef * (single_pole_tail(term.freq, p, cutoff) - single_pole_tail(term.freq, q, cutoff)) /
         (p - q);
}

cx tail_integral(std::span<const PoleTerm> terms, double cutoff) {
  cx sum{};
  for (const auto& t : terms) sum += tail_integral(t, cutoff);
  return sum;
}

}  // namespace lapis
