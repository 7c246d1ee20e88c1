#include "lapis/semigroup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"
#include "lapis/evolution.hpp"
#include "lapis/kernels.hpp"
#include "lapis/quadrature.hpp"
#include "lapis/spectral.hpp"

namespace lapis {

namespace {

void require_in_zero(const ExteriorDomain& d, const StepPacket& f) {
  const Interval i0 = d.component(Component::Zero);
  if (!supported_in(f, {i0.lo - merge_tolerance(i0.lo), i0.hi + merge_tolerance(i0.hi)}))
    fail(ErrorCode::OutOfDomain, "packet must be supported in I0");
}

void require_nonnegative(double t) {
  if (t < 0.0) fail(ErrorCode::NegativeTime, "the compressed semigroup is defined for t >= 0 only");
}

void require_half_plane(cx lambda) {
  if (!(lambda.real() > 0.0)) fail(ErrorCode::HalfPlaneViolation, "resolvent needs Re(lambda) > 0");
}

void require_unit_zero(const ExteriorDomain& d, const char* op) {
  if (std::abs(d.lattice_step() - 1.0) > 1e-12)
    fail(ErrorCode::RangeViolation, std::string(op) + " needs I0 of unit length");
}

}  // namespace

SemigroupState compress_evolve(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, double t,
                               double eps) {
  require_nonnegative(t);
  require_coupled(b, "compress_evolve");
  require_in_zero(d, f);
  SemigroupState out;
  out.t = t;
  if (f.empty()) return out;
  const auto density = make_multiplier(MultiplierKind::MSquaredInv, b, d, eps);
  const Interval i0 = d.component(Component::Zero);
  PacketBuilder sum;
  sum.add(apply_multiplier(density, f, Interval{i0.lo - t, i0.hi - t}), 1.0, t, i0);
  out.packet = sum.build();
  out.truncation_error = density.truncation_error * std::sqrt(norm2(f));
  return out;
}

SemigroupState compress_evolve_via_group(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                         double t, double eps) {
  require_nonnegative(t);
  require_in_zero(d, f);
  const auto r = evolve(b, d, f, t, eps);
  return {restrict_to(r.packet, d, Component::Zero), t, r.truncation_error};
}

double shannon_kernel(double lambda, double xi) noexcept { return sinc_pi(lambda - xi); }

cx shannon_kernel_shifted(const ExteriorDomain& d, double lambda) noexcept {
  return integral_of_phase(lambda, 1.0, d.alpha());
}

double ShannonBasisCoeffs::sample_energy() const noexcept {
  double sum = 0.0;
  for (const auto& v : samples) sum += std::norm(v);
  return sum;
}

ShannonBasisCoeffs shannon_coeffs(const StepPacket& f, double center, int n_lo, int n_hi) {
  if (n_hi < n_lo) fail(ErrorCode::ValidationError, "empty sample window");
  const Interval unit{center - 0.5 - merge_tolerance(center), center + 0.5 + merge_tolerance(center)};
  if (!supported_in(f, unit)) fail(ErrorCode::RangeViolation, "packet must fit in a unit window around the centre");
  ShannonBasisCoeffs out;
  out.n_lo = n_lo;
  out.n_hi = n_hi;
  out.center = center;
  for (int n = n_lo; n <= n_hi; ++n) out.samples.push_back(f.fourier(n));
  out.norm2 = norm2(f);
  out.tail_estimate = std::max(0.0, out.norm2 - out.sample_energy());
  return out;
}

cx shannon_interpolate(const ShannonBasisCoeffs& coeffs, double lambda) noexcept {
  cx sum{};
  for (int n = coeffs.n_lo; n <= coeffs.n_hi; ++n) {
    const double k = shannon_kernel(lambda, n);
    if (k == 0.0) continue;
    sum += coeffs.samples[static_cast<std::size_t>(n - coeffs.n_lo)] * phasor(-coeffs.center * (lambda - n)) * k;
  }
  return sum;
}

namespace {

// Tail over |xi| > cutoff of sum over pole-term lists times the density series
// times e(-t xi). Each list entry is a single-pole term in xi.
cx density_product_tail(const std::vector<PoleTerm>& left, const std::vector<PoleTerm>& right,
                        const MultiplierSeries& density, double t, double cutoff) {
  cx sum{};
  for (const auto& r : density.runs) {
    for (std::int64_t j = 0; j < r.count; ++j) {
      const cx kc = density.scalar * r.term(j);
      const double kf = density.base_shift + static_cast<double>(r.index(j)) * density.lattice_step - t;
      for (const auto& u : left) {
        for (const auto& v : right) {
          double freq = u.freq + v.freq + kf;
          if (std::abs(freq) < zero_frequency) freq = 0.0;
          sum += tail_integral(PoleTerm{u.coef * v.coef * kc, freq, u.pole, v.pole}, cutoff);
        }
      }
    }
  }
  return sum;
}

double packet_max_frequency(const StepPacket& f) {
  double m = 0.0;
  for (const auto& c : f.cells())
    for (const auto& w : c.waves) m = std::max(m, std::abs(w.frequency));
  return m;
}

}  // namespace

TransformSample semigroup_kernel_apply(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                       double t, std::span<const double> lambda_grid,
                                       const SpectralQuadratureOptions& opts) {
  require_nonnegative(t);
  require_coupled(b, "semigroup_kernel_apply");
  require_in_zero(d, f);
  const SpectralDensity density = SpectralDensity::make(b, d);
  const auto series = make_multiplier(MultiplierKind::MSquaredInv, b, d, opts.series_eps);
  const auto f_terms = fourier_pole_terms(f);
  const Interval i0 = d.component(Component::Zero);
  double lambda_max = 0.0;
  for (double l : lambda_grid) lambda_max = std::max(lambda_max, std::abs(l));
  const double cutoff = std::max(opts.cutoff, std::max(lambda_max, packet_max_frequency(f)) + 10.0);
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * cutoff / opts.panel_width));

  std::atomic<bool> converged{true};
  auto one = [&](double lambda) {
    auto integrand = [&](double xi) {
      return integral_of_phase(xi - lambda, i0.lo, i0.hi) * phasor(-xi * t) * f.fourier(xi) * density(xi);
    };
    const auto core = kernels::integrate_panels<cx>(integrand, -cutoff, cutoff, panels, opts.abs_tol,
                                                    kernels::Exec::Serial);
    if (!core.converged) converged.store(false);
    // K0(lambda - xi) = sum over endpoints sigma e(-lambda x_e)/(2 pi i) e(x_e xi)/(xi - lambda)
    const cx inv = 1.0 / cx{0.0, two_pi};
    const std::vector<PoleTerm> kernel_terms{{phasor(-lambda * i0.hi) * inv, i0.hi, lambda, std::nullopt},
                                             {-phasor(-lambda * i0.lo) * inv, i0.lo, lambda, std::nullopt}};
    return core.value + density_product_tail(kernel_terms, f_terms, series, t, cutoff);
  };
  TransformSample out;
  out.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  out.values = kernels::map_grid<cx>(lambda_grid, one, opts.exec);
  out.provenance = Provenance::Quadrature;
  if (!converged.load()) fail(ErrorCode::GridTooCoarse, "semigroup kernel quadrature did not reach its tolerance");
  return out;
}

SampledCoefficientBound sampled_coefficient_bound(const BoundaryMatrix& b, const ExteriorDomain& d,
                                                  const StepPacket& f, double t, int n_window) {
  require_unit_zero(d, "sampled_coefficient_bound");
  const auto z = compress_evolve(b, d, f, t);
  SampledCoefficientBound out;
  for (int n = -n_window; n <= n_window; ++n) out.sampled_sum += std::norm(z.packet.fourier(n));
  // Integer samples of a unit-window function form an orthonormal expansion,
  // so whatever the window misses is the rest of ||Z f||^2.
  out.tail_estimate = std::max(0.0, norm2(z.packet) - out.sampled_sum);
  out.bound = 4.0 / (b.w() * b.w()) * norm2(f);
  out.margin = out.bound - (out.sampled_sum + out.tail_estimate);
  return out;
}

StepPacket spatial_semigroup(const ExteriorDomain& d, const StepPacket& f, double t) {
  require_nonnegative(t);
  require_in_zero(d, f);
  return restrict_to(translate(f, t), d, Component::Zero);
}

namespace {

// (1 - exp(-kappa delta)) / kappa, kept accurate for small kappa delta.
cx damped_width(cx kappa, double delta) {
  const cx z = kappa * delta;
  if (std::abs(z) < 1e-4) return delta * (1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0);
  return (1.0 - std::exp(-z)) / kappa;
}

// integral over s < y of exp(-lambda (y - s)) f(s) ds for f supported in I0.
cx volterra(cx lambda, const StepPacket& f, double y) {
  cx sum{};
  for (const auto& c : f.cells()) {
    const double hi = std::min(c.hi, y);
    if (!(hi > c.lo)) break;
    for (const auto& w : c.waves) {
      const cx kappa = lambda + cx{0.0, two_pi * w.frequency};
      sum += w.amplitude * phasor(w.frequency * hi) * std::exp(-lambda * (y - hi)) * damped_width(kappa, hi - c.lo);
    }
  }
  return sum;
}

std::vector<double> cuts_in(const Interval& range, std::vector<double> points) {
  std::vector<double> cuts{range.lo};
  std::sort(points.begin(), points.end());
  for (double p : points)
    if (p > cuts.back() + 1e-13 && p < range.hi - 1e-13) cuts.push_back(p);
  cuts.push_back(range.hi);
  return cuts;
}

template <class F>
double l2_squared(F&& fn, const std::vector<double>& cuts, double tol) {
  double total = 0.0;
  const double share = tol / static_cast<double>(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_adaptive<double>([&](double x) { return std::norm(fn(x)); }, cuts[i], cuts[i + 1], share)
                 .value;
  return total;
}

}  // namespace

cx spatial_resolvent_at(const ExteriorDomain& d, cx lambda, const StepPacket& f, double x) {
  require_half_plane(lambda);
  require_in_zero(d, f);
  const Interval i0 = d.component(Component::Zero);
  if (x < i0.lo || x > i0.hi) return {};
  return volterra(lambda, f, x);
}

std::vector<cx> spatial_resolvent(const ExteriorDomain& d, cx lambda, const StepPacket& f,
                                  std::span<const double> xs) {
  std::vector<cx> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(spatial_resolvent_at(d, lambda, f, x));
  return out;
}

double spatial_resolvent_norm2(const ExteriorDomain& d, cx lambda, const StepPacket& f, double tol) {
  require_half_plane(lambda);
  require_in_zero(d, f);
  const Interval i0 = d.component(Component::Zero);
  return l2_squared([&](double x) { return volterra(lambda, f, x); }, cuts_in(i0, f.breakpoints()), tol);
}

cx laplace_spatial_at(const ExteriorDomain& d, cx lambda, const StepPacket& f, double x, double tol) {
  require_half_plane(lambda);
  require_in_zero(d, f);
  const Interval i0 = d.component(Component::Zero);
  if (!i0.contains_open(x)) return {};
  // (Z(t) f)(x) = f(x - t), nonzero for t < x - 1; its jumps sit at x - b.
  const Interval range{0.0, x - i0.lo};
  std::vector<double> jumps;
  for (double bp : f.breakpoints()) jumps.push_back(x - bp);
  const auto cuts = cuts_in(range, jumps);
  cx total{};
  const double share = tol / static_cast<double>(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_adaptive<cx>([&](double t) { return std::exp(-lambda * t) * f(x - t); }, cuts[i],
                                    cuts[i + 1], share)
                 .value;
  return total;
}

cx laplace_compressed_at(const BoundaryMatrix& b, const ExteriorDomain& d, cx lambda, const StepPacket& f,
                         double x, double tol, double eps) {
  require_half_plane(lambda);
  require_coupled(b, "laplace_compressed_at");
  require_in_zero(d, f);
  const Interval i0 = d.component(Component::Zero);
  if (!i0.contains_open(x) || f.empty()) return {};
  const auto density = make_multiplier(MultiplierKind::MSquaredInv, b, d, eps);
  // (Z(t) f)(x) = (E f)(x - t); E f jumps where x - t = b - k step.
  const double horizon = 40.0 / lambda.real();
  const double step = d.lattice_step();
  std::vector<double> jumps;
  for (double bp : f.breakpoints())
    for (double k = 0.0; x - bp + k * step < horizon; k += 1.0) jumps.push_back(x - bp + k * step);
  const auto cuts = cuts_in({0.0, horizon}, jumps);
  cx total{};
  const double share = tol / static_cast<double>(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_adaptive<cx>(
                 [&](double t) { return std::exp(-lambda * t) * apply_pointwise(density, f, x - t); }, cuts[i],
                 cuts[i + 1], share)
                 .value;
  return total;
}

cx compressed_resolvent_at(const BoundaryMatrix& b, const ExteriorDomain& d, cx lambda, const StepPacket& f,
                           double x, double eps) {
  require_half_plane(lambda);
  require_coupled(b, "compressed_resolvent_at");
  require_in_zero(d, f);
  const Interval i0 = d.component(Component::Zero);
  if (x < i0.lo || x > i0.hi) return {};
  const double step = d.lattice_step();
  const double damping = b.s() * std::exp(-lambda.real() * step);
  const std::int64_t terms = geometric_count(damping, eps);
  cx sum{};
  for (std::int64_t k = 0; k < terms; ++k) {
    const cx ak = std::pow(b.s(), static_cast<double>(k)) * phasor(-static_cast<double>(k) * b.psi());
    sum += ak * volterra(lambda, f, x + static_cast<double>(k) * step);
  }
  return sum;
}

ResolventComparison resolvent_comparison(const BoundaryMatrix& b, const ExteriorDomain& d, cx lambda,
                                         const StepPacket& f, double tol) {
  require_half_plane(lambda);
  require_coupled(b, "resolvent_comparison");
  require_in_zero(d, f);
  ResolventComparison out;
  const SpectralDensity density = SpectralDensity::make(b, d);
  out.m0_squared = 1.0 / density(0.0);
  const auto table = fourier_coeffs(b, d, default_fourier_order(b, 1e-16));
  cx sum{};
  for (const auto& a : table.coefficients) sum += a;
  out.normalization_residual = std::abs(out.m0_squared * sum - 1.0);

  const Interval i0 = d.component(Component::Zero);
  std::vector<double> cuts_at = f.breakpoints();
  const auto cuts = cuts_in(i0, cuts_at);
  auto series = [&](double x) { return compressed_resolvent_at(b, d, lambda, f, x); };
  out.laplace_vs_series = std::sqrt(
      l2_squared([&](double x) { return laplace_compressed_at(b, d, lambda, f, x, 1e-13) - series(x); }, cuts, tol));
  const cx scaled = lambda * out.m0_squared;
  out.discrepancy = std::sqrt(l2_squared([&](double x) { return series(x) - volterra(scaled, f, x); }, cuts, tol));
  const double ref = std::sqrt(l2_squared(series, cuts, tol));
  out.relative_discrepancy = ref > 0.0 ? out.discrepancy / ref : 0.0;
  return out;
}

std::vector<DecaySample> norm_decay_profile(const BoundaryMatrix& b, const ExteriorDomain& d, int n,
                                            std::span<const double> t_grid, bool with_oracle) {
  require_unit_zero(d, "norm_decay_profile");
  require_coupled(b, "norm_decay_profile");
  const Interval i0 = d.component(Component::Zero);
  const StepPacket basis = StepPacket::wave(i0.lo, i0.hi, 1.0, n);
  const SpectralDensity density = SpectralDensity::make(b, d);
  const auto series = make_multiplier(MultiplierKind::MSquaredInv, b, d, 1e-15);
  const auto f_terms = fourier_pole_terms(basis);
  const double cutoff = 40.0 + std::abs(n);
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * cutoff / 0.1));

  // h(x) = integral f^(lambda) |a|^-2 e(lambda (x - t)) d lambda, core plus tail.
  auto pointwise = [&](double x, double t) {
    auto integrand = [&](double l) { return basis.fourier(l) * density(l) * phasor(l * (x - t)); };
    const auto core = kernels::integrate_panels<cx>(integrand, -cutoff, cutoff, panels, 1e-12, kernels::Exec::Serial);
    cx tail{};
    for (const auto& r : series.runs)
      for (std::int64_t j = 0; j < r.count; ++j) {
        const double kf = static_cast<double>(r.index(j)) * series.lattice_step + (x - t);
        for (const auto& u : f_terms) {
          double freq = u.freq + kf;
          if (std::abs(freq) < zero_frequency) freq = 0.0;
          tail += tail_integral(PoleTerm{u.coef * r.term(j), freq, u.pole, std::nullopt}, cutoff);
        }
      }
    return core.value + tail;
  };

  std::vector<DecaySample> out;
  for (double t : t_grid) {
    DecaySample s;
    s.t = t;
    s.engine = norm2(compress_evolve(b, d, basis, t).packet);
    if (with_oracle) {
      // jumps where x - t + k step meets an end of I0
      std::vector<double> jumps;
      for (double k = -std::ceil(t) - 2.0; k <= 2.0; k += 1.0)
        for (double e : {i0.lo, i0.hi}) jumps.push_back(e + t - k * d.lattice_step());
      const auto cuts = cuts_in(i0, jumps);
      auto h = [&](double x) { return pointwise(x, t); };
      const auto pieces = kernels::map_index<double>(cuts.size() - 1, [&](std::size_t i) {
        return integrate_adaptive<double>([&](double x) { return std::norm(h(x)); }, cuts[i], cuts[i + 1], 1e-11)
            .value;
      });
      for (double p : pieces) s.oracle += p;
    }
    out.push_back(s);
  }
  return out;
}

double spatial_generator_residual(const ExteriorDomain& d, const std::function<double(double)>& f,
                                  const std::function<double(double)>& df, double h) {
  if (!(h > 0.0)) fail(ErrorCode::RangeViolation, "step must be positive");
  const Interval i0 = d.component(Component::Zero);
  auto shifted = [&](double x) { return x - h > i0.lo ? f(x - h) : 0.0; };
  auto r = [&](double x) { return (shifted(x) - f(x)) / h + df(x); };
  const auto cuts = cuts_in(i0, {i0.lo + h});
  return std::sqrt(l2_squared(r, cuts, 1e-14));
}

}  // namespace lapis
