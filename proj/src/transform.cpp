#include "lapis/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"
#include "lapis/evolution.hpp"
#include "lapis/spectral.hpp"

namespace lapis {

namespace {

struct ComponentTransforms {
  cx minus, zero, plus;
};

ComponentTransforms split_fourier(const std::array<StepPacket, 3>& parts, double lambda) {
  return {parts[0].fourier(lambda), parts[1].fourier(lambda), parts[2].fourier(lambda)};
}

std::array<StepPacket, 3> split(const ExteriorDomain& d, const StepPacket& f) {
  require_in_omega(d, f);
  return {restrict_to(f, d, Component::Minus), restrict_to(f, d, Component::Zero),
          restrict_to(f, d, Component::Plus)};
}

cx combine(const EigenCoefficients& k, const ComponentTransforms& t) {
  return std::conj(k.a) * t.minus + t.zero + std::conj(k.c) * t.plus;
}

double max_frequency(const StepPacket& f) {
  double m = 0.0;
  for (const auto& c : f.cells())
    for (const auto& w : c.waves) m = std::max(m, std::abs(w.frequency));
  return m;
}

}  // namespace

cx transform_value(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, double lambda) {
  const auto parts = split(d, f);
  return combine(eigen_coeffs(b, d, lambda), split_fourier(parts, lambda));
}

TransformSample forward_transform(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                  std::span<const double> lambda_grid, kernels::Exec exec) {
  require_coupled(b, "forward_transform");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i - 1] < lambda_grid[i])) fail(ErrorCode::ValidationError, "lambda grid must increase");
  const auto parts = split(d, f);
  TransformSample out;
  out.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  out.values = kernels::map_grid<cx>(
      lambda_grid, [&](double l) { return combine(eigen_coeffs(b, d, l), split_fourier(parts, l)); }, exec);
  out.provenance = Provenance::Analytic;
  return out;
}

LambdaGrid kronrod_grid(double cutoff, std::size_t panels) {
  if (!(cutoff > 0.0) || panels == 0) fail(ErrorCode::ValidationError, "grid needs a positive cutoff and panels");
  LambdaGrid g;
  g.cutoff = cutoff;
  const double h = 2.0 * cutoff / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = -cutoff + (static_cast<double>(p) + 0.5) * h;
    const double r = 0.5 * h;
    for (int k = -7; k <= 7; ++k) {
      const int idx = 7 - std::abs(k);  // into the abscissa table, 7 is the centre
      const double x = k < 0 ? -detail::gk_x[idx] : detail::gk_x[idx];
      g.nodes.push_back(c + r * x);
      g.kronrod_weights.push_back(r * detail::gk_wk[idx]);
      g.gauss_weights.push_back(idx % 2 == 1 ? r * detail::gk_wg[idx / 2] : 0.0);
    }
  }
  return g;
}

AdjointResult adjoint_transform(const BoundaryMatrix& b, const ExteriorDomain& d, const TransformSample& g,
                                const LambdaGrid& grid, std::span<const double> partition, double tol) {
  require_coupled(b, "adjoint_transform");
  if (g.values.size() != grid.nodes.size())
    fail(ErrorCode::ValidationError, "sample must be taken on the quadrature grid nodes");
  AdjointResult out;
  if (partition.size() < 2) return out;
  const SpectralDensity density = SpectralDensity::make(b, d);

  // g(lambda) |a|^-2 times the component weight, per node.
  std::vector<std::array<cx, 3>> weighted(grid.nodes.size());
  for (std::size_t n = 0; n < grid.nodes.size(); ++n) {
    const double l = grid.nodes[n];
    const auto k = eigen_coeffs(b, d, l);
    const cx base = g.values[n] * density(l);
    weighted[n] = {base * k.a, base, base * k.c};
  }
  // Tail model |g w P| ~ C / |lambda|, C taken from the outermost panel.
  std::array<double, 3> tail_c{};
  const std::size_t edge = std::min<std::size_t>(15, grid.nodes.size());
  for (std::size_t n = 0; n < edge; ++n)
    for (std::size_t side : {n, grid.nodes.size() - 1 - n})
      for (int c = 0; c < 3; ++c)
        tail_c[c] = std::max(tail_c[c], std::abs(grid.nodes[side] * weighted[side][c]));

  PacketBuilder builder;
  double err2 = 0.0;
  for (std::size_t k = 0; k + 1 < partition.size(); ++k) {
    const double x0 = partition[k], x1 = partition[k + 1];
    if (!(x0 < x1)) fail(ErrorCode::ValidationError, "partition must increase");
    const Region r = d.classify(0.5 * (x0 + x1));
    int comp = -1;
    if (r == Region::IMinus) comp = 0;
    if (r == Region::IZero) comp = 1;
    if (r == Region::IPlus) comp = 2;
    if (comp < 0) continue;
    cx kron{}, gauss{};
    for (std::size_t n = 0; n < grid.nodes.size(); ++n) {
      const cx v = weighted[n][comp] * integral_of_phase(grid.nodes[n], x0, x1);
      kron += grid.kronrod_weights[n] * v;
      if (grid.gauss_weights[n] != 0.0) gauss += grid.gauss_weights[n] * v;
    }
    const double width = x1 - x0;
    const double cell_err = (std::abs(kron - gauss) + 2.0 * tail_c[comp] / (std::numbers::pi * grid.cutoff)) / width;
    err2 += width * cell_err * cell_err;
    builder.add(x0, x1, Wave{kron / width, 0.0});
  }
  out.error_estimate = std::sqrt(err2);
  if (out.error_estimate > tol)
    fail(ErrorCode::GridTooCoarse, "adjoint quadrature error estimate " + std::to_string(out.error_estimate) +
                                       " exceeds " + std::to_string(tol));
  out.packet = builder.build();
  return out;
}

std::vector<PoleTerm> fourier_pole_terms(const StepPacket& f) {
  // integral_lo^hi A e((nu - lambda) x) dx, endpoint by endpoint:
  // -sigma A e(nu x_e) / (2 pi i) * e(-x_e lambda) / (lambda - nu).
  std::vector<PoleTerm> out;
  const cx inv = 1.0 / cx{0.0, two_pi};
  for (const auto& c : f.cells()) {
    for (const auto& w : c.waves) {
      for (const auto& [x, sigma] : {std::pair{c.hi, 1.0}, std::pair{c.lo, -1.0}}) {
        out.push_back(PoleTerm{-sigma * w.amplitude * phasor(w.frequency * x) * inv, -x, w.frequency, std::nullopt});
      }
    }
  }
  return out;
}

namespace {

// Integral over |lambda| > cutoff of conj(f_i^) K_ij g_j^, with K_ij expanded
// into its exponential terms.
cx block_tail(const StepPacket& fi, const StepPacket& gj, const MultiplierSeries& k, double cutoff) {
  const auto tf = fourier_pole_terms(fi);
  const auto tg = fourier_pole_terms(gj);
  struct Pair {
    cx coef;
    double freq;
    double p, q;
  };
  std::vector<Pair> pairs;
  pairs.reserve(tf.size() * tg.size());
  for (const auto& u : tf)
    for (const auto& v : tg) pairs.push_back({std::conj(u.coef) * v.coef, -u.freq + v.freq, u.pole, v.pole});
  cx sum{};
  for (const auto& r : k.runs) {
    cx coef = r.first;
    const cx ratio = r.ratio_modulus * phasor(r.ratio_phase);
    for (std::int64_t j = 0; j < r.count; ++j) {
      if (j % 64 == 0) coef = r.term(j);
      const cx kc = k.scalar * coef;
      const double kf = k.base_shift + static_cast<double>(r.index(j)) * k.lattice_step;
      for (const auto& p : pairs) {
        double freq = p.freq + kf;
        if (std::abs(freq) < zero_frequency) freq = 0.0;
        sum += tail_integral(PoleTerm{p.coef * kc, freq, p.p, p.q}, cutoff);
      }
      coef *= ratio;
    }
  }
  return sum;
}

}  // namespace

SpectralInner spectral_inner(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                             const StepPacket& g, const SpectralQuadratureOptions& opts) {
  require_coupled(b, "spectral_inner");
  const auto pf = split(d, f);
  const auto pg = split(d, g);
  const double cutoff = std::max(opts.cutoff, std::max(max_frequency(f), max_frequency(g)) + 10.0);
  const SpectralDensity density = SpectralDensity::make(b, d);

  auto integrand = [&](double l) {
    const auto k = eigen_coeffs(b, d, l);
    return std::conj(combine(k, split_fourier(pf, l))) * combine(k, split_fourier(pg, l)) * density(l);
  };
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * cutoff / opts.panel_width));
  const auto core = kernels::integrate_panels<cx>(integrand, -cutoff, cutoff, panels, opts.abs_tol, opts.exec);

  cx tail{};
  for (Component i : all_components) {
    const auto& fi = pf[static_cast<std::size_t>(i)];
    if (fi.empty()) continue;
    for (Component j : all_components) {
      const auto& gj = pg[static_cast<std::size_t>(j)];
      if (gj.empty()) continue;
      tail += block_tail(fi, gj, make_multiplier(block_kind(i, j), b, d, opts.series_eps), cutoff);
    }
  }
  return {core.value + tail, core.value, tail, core.error};
}

cx spectral_inner_packets(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                          const StepPacket& g, double eps) {
  require_coupled(b, "spectral_inner_packets");
  const auto pf = split(d, f);
  const auto pg = split(d, g);
  cx sum{};
  for (Component i : all_components) {
    const auto& fi = pf[static_cast<std::size_t>(i)];
    if (fi.empty()) continue;
    for (Component j : all_components) {
      const auto& gj = pg[static_cast<std::size_t>(j)];
      if (gj.empty()) continue;
      const auto m = make_multiplier(block_kind(i, j), b, d, eps);
      sum += inner(fi, apply_multiplier(m, gj, fi.support()));
    }
  }
  return sum;
}

}  // namespace lapis
