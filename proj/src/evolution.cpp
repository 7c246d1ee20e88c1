#include "lapis/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"
#include "lapis/kernels.hpp"

namespace lapis {

void require_in_omega(const ExteriorDomain& d, const StepPacket& f) {
  for (const auto& c : f.cells()) {
    for (const Interval bar : {d.barrier1(), d.barrier2()}) {
      const double lo = std::max(c.lo, bar.lo), hi = std::min(c.hi, bar.hi);
      if (hi - lo > merge_tolerance(lo))
        fail(ErrorCode::OutOfDomain, "packet has a cell on the barrier [" + std::to_string(bar.lo) + ", " +
                                         std::to_string(bar.hi) + "]");
    }
  }
}

MultiplierKind block_kind(Component to, Component from) noexcept {
  using C = Component;
  using K = MultiplierKind;
  if (to == from) return to == C::Zero ? K::MSquaredInv : K::Identity;
  switch (from) {
    case C::Minus: return to == C::Zero ? K::AInv : K::AInvC;
    case C::Zero: return to == C::Minus ? K::AConjInv : K::CConjInv;
    case C::Plus: return to == C::Minus ? K::CInvA : K::CInv;
  }
  return K::Identity;
}

namespace {

std::size_t slot(Component c) { return static_cast<std::size_t>(c); }

Interval shifted(Interval i, double t) { return {i.lo - t, i.hi - t}; }

}  // namespace

EvolutionResult evolve(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, double t,
                       double eps) {
  require_coupled(b, "evolve");
  require_in_omega(d, f);
  EvolutionResult out;
  out.t = t;
  if (f.empty()) return out;

  std::array<StepPacket, 3> parts;
  for (Component c : all_components) parts[slot(c)] = restrict_to(f, d, c);

  // One series per kind; the two identity blocks share the same entry.
  std::array<std::optional<MultiplierSeries>, 11> cache;
  PacketBuilder sum;
  for (Component from : all_components) {
    const StepPacket& fj = parts[slot(from)];
    if (fj.empty()) continue;
    const double fj_norm = std::sqrt(norm2(fj));
    for (Component to : all_components) {
      const MultiplierKind kind = block_kind(to, from);
      auto& m = cache[static_cast<std::size_t>(kind)];
      if (!m) m = make_multiplier(kind, b, d, eps);
      const Interval target = d.component(to);
      const StepPacket piece = apply_multiplier(*m, fj, shifted(target, t));
      sum.add(piece, 1.0, t, target);
      out.truncation_error += m->truncation_error * fj_norm;
    }
  }
  out.packet = sum.build();
  return out;
}

EvolutionResult evolve_decoupled(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                 double t) {
  if (b.regime() != Regime::Decoupled) fail(ErrorCode::NotDecoupled, "evolve_decoupled needs w == 0");
  require_in_omega(d, f);
  EvolutionResult out;
  out.t = t;
  if (f.empty()) return out;

  const double l = d.lattice_step();
  const Interval i0 = d.component(Component::Zero);
  const Interval im = d.component(Component::Minus);
  const Interval ip = d.component(Component::Plus);
  PacketBuilder sum;

  // x in I0 at time t came from x - t + n l after n wraps, each costing e(-psi)
  const StepPacket f0 = restrict_to(f, i0);
  if (!f0.empty()) {
    const Interval s = f0.support();
    const auto n_lo = static_cast<std::int64_t>(std::ceil((s.lo - i0.hi + t) / l - 1e-9));
    const auto n_hi = static_cast<std::int64_t>(std::floor((s.hi - i0.lo + t) / l + 1e-9));
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
      const long double cycles = -static_cast<long double>(n) * b.psi();
      const cx phase = phasor(static_cast<double>(cycles - std::floor(cycles)));
      sum.add(f0, phase, t - static_cast<double>(n) * l, i0);
    }
  }

  const cx right = -phasor(b.psi() - b.theta());
  const StepPacket fm = restrict_to(f, im);
  const StepPacket fp = restrict_to(f, ip);
  sum.add(fm, 1.0, t, im);
  sum.add(fm, right, t + d.beta(), ip);
  sum.add(fp, 1.0, t, ip);
  sum.add(fp, 1.0 / right, t - d.beta(), im);
  out.packet = sum.build();
  return out;
}

StepPacket scatter(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f_in, double eps) {
  require_coupled(b, "scatter");
  if (f_in.empty()) fail(ErrorCode::EmptySupport, "scatter needs a nonzero incoming packet");
  if (!supported_in(f_in, d.component(Component::Minus)))
    fail(ErrorCode::EmptySupport, "incoming packet must be supported in I-");
  return apply_multiplier(make_multiplier(MultiplierKind::AInvC, b, d, eps), f_in);
}

double scattering_gap(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f_in, double t,
                      double eps) {
  const StepPacket outgoing = translate(scatter(b, d, f_in, eps), t);
  return distance(evolve(b, d, f_in, t, eps).packet, outgoing);
}

StepPacket translation_representation(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                      Representation which, double eps) {
  require_coupled(b, "translation_representation");
  require_in_omega(d, f);
  const bool incoming = which == Representation::Incoming;
  const StepPacket fm = restrict_to(f, d, Component::Minus);
  const StepPacket f0 = restrict_to(f, d, Component::Zero);
  const StepPacket fp = restrict_to(f, d, Component::Plus);
  PacketBuilder sum;
  if (incoming) {
    sum.add(fm);
    sum.add(apply_multiplier(make_multiplier(MultiplierKind::AConjInv, b, d, eps), f0));
    sum.add(apply_multiplier(make_multiplier(MultiplierKind::CInvA, b, d, eps), fp));
  } else {
    sum.add(apply_multiplier(make_multiplier(MultiplierKind::AInvC, b, d, eps), fm));
    sum.add(apply_multiplier(make_multiplier(MultiplierKind::CConjInv, b, d, eps), f0));
    sum.add(fp);
  }
  return sum.build();
}

cx correlation(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f, const StepPacket& g,
               double t, double eps) {
  return inner(f, evolve(b, d, g, t, eps).packet);
}

std::vector<double> cesaro_decay(const BoundaryMatrix& b, const ExteriorDomain& d, const StepPacket& f,
                                 const StepPacket& g, const std::vector<double>& horizons, double abs_tol) {
  std::vector<double> out;
  out.reserve(horizons.size());
  auto integrand = [&](double t) { return std::norm(correlation(b, d, f, g, t)); };
  for (double T : horizons) {
    if (!(T > 0.0)) fail(ErrorCode::RangeViolation, "Cesaro horizon must be positive");
    // |<f, U(t) g>|^2 is piecewise polynomial with kinks wherever two
    // breakpoints meet; quarter-unit panels keep most of them on panel edges.
    const auto panels = static_cast<std::size_t>(std::max(8.0, std::ceil(8.0 * T)));
    const auto q = kernels::integrate_panels<double>(integrand, -T, T, panels, abs_tol * 2.0 * T);
    out.push_back(q.value / (2.0 * T));
  }
  return out;
}

StepPacket block_matrix_entry(const BoundaryMatrix& b, const ExteriorDomain& d, Component i, Component j,
                              const StepPacket& f, double t, double eps) {
  const StepPacket fj = restrict_to(f, d, j);
  return restrict_to(evolve(b, d, fj, t, eps).packet, d, i);
}

namespace {
MultiplierSeries component_weight(Component c, const BoundaryMatrix& b, const ExteriorDomain& d, double eps) {
  switch (c) {
    case Component::Minus: return make_multiplier(MultiplierKind::A, b, d, eps);
    case Component::Plus: return make_multiplier(MultiplierKind::C, b, d, eps);
    default: return identity_multiplier(d.lattice_step());
  }
}
}  // namespace

StepPacket block_matrix_entry_composed(const BoundaryMatrix& b, const ExteriorDomain& d, Component i,
                                       Component j, const StepPacket& f, double t, double eps) {
  require_coupled(b, "block_matrix_entry_composed");
  const StepPacket fj = restrict_to(f, d, j);
  if (fj.empty()) return {};
  const auto weight = compose(make_multiplier(MultiplierKind::MSquaredInv, b, d, eps),
                              compose(component_weight(i, b, d, eps),
                                      conjugate_multiplier(component_weight(j, b, d, eps))));
  const Interval target = d.component(i);
  PacketBuilder out;
  out.add(apply_multiplier(weight, fj, shifted(target, t)), 1.0, t, target);
  return out.build();
}

}  // namespace lapis
