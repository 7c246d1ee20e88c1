#include "lapis/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lapis/eigen.hpp"
#include "lapis/error.hpp"

namespace lapis {

std::string_view to_string(MultiplierKind k) noexcept {
  switch (k) {
    case MultiplierKind::Identity: return "Identity";
    case MultiplierKind::AInv: return "AInv";
    case MultiplierKind::CInv: return "CInv";
    case MultiplierKind::AInvC: return "AInvC";
    case MultiplierKind::CInvA: return "CInvA";
    case MultiplierKind::AConjInv: return "AConjInv";
    case MultiplierKind::CConjInv: return "CConjInv";
    case MultiplierKind::MSquaredInv: return "MSquaredInv";
    case MultiplierKind::A: return "A";
    case MultiplierKind::C: return "C";
    case MultiplierKind::Custom: return "Custom";
  }
  return "Custom";
}

MultiplierKind conjugate_kind(MultiplierKind k) noexcept {
  switch (k) {
    case MultiplierKind::AInv: return MultiplierKind::AConjInv;
    case MultiplierKind::AConjInv: return MultiplierKind::AInv;
    case MultiplierKind::CInv: return MultiplierKind::CConjInv;
    case MultiplierKind::CConjInv: return MultiplierKind::CInv;
    // c/a is unimodular, so its conjugate is a/c
    case MultiplierKind::AInvC: return MultiplierKind::CInvA;
    case MultiplierKind::CInvA: return MultiplierKind::AInvC;
    case MultiplierKind::Identity:
    case MultiplierKind::MSquaredInv: return k;
    default: return MultiplierKind::Custom;
  }
}

namespace {
// e(j * phase) with the product formed in extended precision: j reaches 1e7.
cx phase_power(std::int64_t j, double phase) noexcept {
  const long double p = static_cast<long double>(j) * static_cast<long double>(phase);
  return phasor(static_cast<double>(p - std::floor(p)));
}
}  // namespace

cx CoefficientRun::term(std::int64_t j) const noexcept {
  if (j == 0) return first;
  return first * std::pow(ratio_modulus, static_cast<double>(j)) * phase_power(j, ratio_phase);
}

cx MultiplierSeries::value(double lambda) const noexcept {
  cx sum{};
  for (const auto& r : runs) {
    const cx lead = r.first * phase_power(r.start, lattice_step * lambda);
    if (r.count == 1 || r.ratio_modulus == 0.0) {
      sum += lead;
      continue;
    }
    const double step_phase = r.ratio_phase + r.direction * lattice_step * lambda;
    const cx q = r.ratio_modulus * phasor(step_phase);
    const cx qn = std::pow(r.ratio_modulus, static_cast<double>(r.count)) * phase_power(r.count, step_phase);
    const cx denom = 1.0 - q;
    if (std::abs(denom) < 1e-300) {
      sum += lead * static_cast<double>(r.count);
    } else {
      sum += lead * (1.0 - qn) / denom;
    }
  }
  return scalar * phasor(base_shift * lambda) * sum;
}

cx MultiplierSeries::coefficient(std::int64_t n) const noexcept {
  cx sum{};
  for (const auto& r : runs) {
    const std::int64_t j = (n - r.start) * r.direction;
    if (j >= 0 && j < r.count) sum += r.term(j);
  }
  return sum;
}

std::size_t MultiplierSeries::term_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : runs) n += static_cast<std::size_t>(r.count);
  return n;
}

double MultiplierSeries::l1_norm() const noexcept {
  double sum = 0.0;
  for (const auto& r : runs) {
    const double m = std::abs(r.first);
    if (r.ratio_modulus == 0.0 || r.count == 1) {
      sum += m;
    } else {
      sum += m * (1.0 - std::pow(r.ratio_modulus, static_cast<double>(r.count))) / (1.0 - r.ratio_modulus);
    }
  }
  return std::abs(scalar) * sum;
}

std::map<std::int64_t, cx> MultiplierSeries::materialize(std::size_t max_terms) const {
  if (term_count() > max_terms)
    fail(ErrorCode::RangeViolation, "series has " + std::to_string(term_count()) + " terms, above the cap " +
                                        std::to_string(max_terms));
  std::map<std::int64_t, cx> out;
  for (const auto& r : runs)
    for (std::int64_t j = 0; j < r.count; ++j) out[r.index(j)] += r.term(j);
  return out;
}

std::int64_t geometric_count(double r, double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::RangeViolation, "truncation eps must be positive");
  if (r <= 0.0) return 1;
  if (r >= 1.0) fail(ErrorCode::DegenerateRegime, "geometric ratio 1 never truncates");
  const double n = std::ceil(std::log(eps * (1.0 - r)) / std::log(r));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

MultiplierSeries identity_multiplier(double lattice_step) {
  MultiplierSeries m;
  m.lattice_step = lattice_step;
  m.runs.push_back(CoefficientRun{});
  return m;
}

namespace {

double tail_of(const CoefficientRun& r) {
  if (r.ratio_modulus == 0.0) return 0.0;
  return std::abs(r.first) * std::pow(r.ratio_modulus, static_cast<double>(r.count)) / (1.0 - r.ratio_modulus);
}

void finish(MultiplierSeries& m) {
  std::erase_if(m.runs, [](const CoefficientRun& r) { return r.first == cx{}; });
  double tail = 0.0;
  for (const auto& r : m.runs) tail += tail_of(r);
  m.truncation_error = std::abs(m.scalar) * tail;
}

CoefficientRun single(std::int64_t index, cx value) { return CoefficientRun{index, 1, 1, value, 0.0, 0.0}; }

}  // namespace

MultiplierSeries make_multiplier(MultiplierKind kind, const BoundaryMatrix& b, const ExteriorDomain& d,
                                 double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::RangeViolation, "truncation eps must be positive");
  if (kind == MultiplierKind::Identity) return identity_multiplier(d.lattice_step());
  if (kind == MultiplierKind::Custom) fail(ErrorCode::ValidationError, "Custom series come from compose()");
  require_coupled(b, "make_multiplier");

  const double w = b.w(), s = b.s(), theta = b.theta(), phi = b.phi(), psi = b.psi();
  const double gap = d.beta() - d.alpha();
  const std::int64_t n = geometric_count(s, eps);
  auto run = [&](std::int64_t start, int dir, cx first, double phase) {
    return CoefficientRun{start, dir, n, first, s, phase};
  };

  MultiplierSeries m;
  m.kind = kind;
  m.lattice_step = d.lattice_step();
  switch (kind) {
    case MultiplierKind::AInv:
      m.scalar = w * phasor(-phi);
      m.base_shift = -1.0;
      m.runs = {run(0, 1, 1.0, -psi)};
      break;
    case MultiplierKind::CInv:
      m.scalar = w * phasor(theta - phi);
      m.base_shift = gap;
      m.runs = {run(0, -1, 1.0, psi)};
      break;
    case MultiplierKind::AInvC:
      m.base_shift = -d.beta();
      m.runs = {single(0, -s * phasor(psi - theta)), run(1, 1, w * w * phasor(-theta), -psi)};
      break;
    case MultiplierKind::CInvA:
      m.base_shift = d.beta();
      m.runs = {single(0, -s * phasor(theta - psi)), run(-1, -1, w * w * phasor(theta), psi)};
      break;
    case MultiplierKind::AConjInv:
      m.scalar = w * phasor(phi);
      m.base_shift = 1.0;
      m.runs = {run(0, -1, 1.0, psi)};
      break;
    case MultiplierKind::CConjInv:
      m.scalar = w * phasor(phi - theta);
      m.base_shift = -gap;
      m.runs = {run(0, 1, 1.0, -psi)};
      break;
    case MultiplierKind::MSquaredInv:
      m.runs = {run(0, 1, 1.0, -psi), run(-1, -1, s * phasor(psi), psi)};
      break;
    case MultiplierKind::A:
      m.scalar = phasor(phi) / w;
      m.base_shift = 1.0;
      m.runs = {single(0, 1.0), single(1, -s * phasor(-psi))};
      break;
    case MultiplierKind::C:
      m.scalar = phasor(phi - theta) / w;
      m.base_shift = -gap;
      m.runs = {single(0, 1.0), single(-1, -s * phasor(psi))};
      break;
    default: break;
  }
  finish(m);
  return m;
}

MultiplierSeries conjugate_multiplier(const MultiplierSeries& m) {
  MultiplierSeries out = m;
  out.kind = conjugate_kind(m.kind);
  out.scalar = std::conj(m.scalar);
  out.base_shift = -m.base_shift;
  for (auto& r : out.runs) {
    r.start = -r.start;
    r.direction = -r.direction;
    r.first = std::conj(r.first);
    r.ratio_phase = -r.ratio_phase;
  }
  return out;
}

MultiplierSeries compose(const MultiplierSeries& m1, const MultiplierSeries& m2, std::size_t max_terms) {
  if (std::abs(m1.lattice_step - m2.lattice_step) > 1e-15 * std::max(1.0, m1.lattice_step))
    fail(ErrorCode::ValidationError, "compose needs a common lattice step");
  if (m1.term_count() * m2.term_count() > max_terms * max_terms)
    fail(ErrorCode::RangeViolation, "composition too large to materialize");
  const auto c1 = m1.materialize(max_terms);
  const auto c2 = m2.materialize(max_terms);
  std::map<std::int64_t, cx> prod;
  for (const auto& [i, u] : c1)
    for (const auto& [j, v] : c2) prod[i + j] += u * v;

  MultiplierSeries out;
  out.kind = MultiplierKind::Custom;
  out.scalar = m1.scalar * m2.scalar;
  out.base_shift = m1.base_shift + m2.base_shift;
  out.lattice_step = m1.lattice_step;
  for (const auto& [k, v] : prod)
    if (v != cx{}) out.runs.push_back(single(k, v));
  out.truncation_error = m1.truncation_error * m2.l1_norm() + m2.truncation_error * m1.l1_norm() +
                         m1.truncation_error * m2.truncation_error;
  return out;
}

cx multiplier_exact_value(MultiplierKind kind, const BoundaryMatrix& b, const ExteriorDomain& d, double lambda) {
  if (kind == MultiplierKind::Identity) return 1.0;
  const auto k = eigen_coeffs(b, d, lambda);
  switch (kind) {
    case MultiplierKind::AInv: return 1.0 / k.a;
    case MultiplierKind::CInv: return 1.0 / k.c;
    case MultiplierKind::AInvC: return k.c / k.a;
    case MultiplierKind::CInvA: return k.a / k.c;
    case MultiplierKind::AConjInv: return 1.0 / std::conj(k.a);
    case MultiplierKind::CConjInv: return 1.0 / std::conj(k.c);
    case MultiplierKind::MSquaredInv: return 1.0 / std::norm(k.a);
    case MultiplierKind::A: return k.a;
    case MultiplierKind::C: return k.c;
    default: fail(ErrorCode::ValidationError, "no closed form for a Custom series");
  }
}

namespace {

// Range [j0, j1) of run positions whose term moves source into target, i.e.
// x + base + n step lies in source for some x in target.
std::pair<std::int64_t, std::int64_t> run_window(const CoefficientRun& r, double base, double step,
                                                 Interval source, Interval target) {
  constexpr double slack = 1e-9;
  double n_lo = std::ceil((source.lo - target.hi - base) / step - slack);
  double n_hi = std::floor((source.hi - target.lo - base) / step + slack);
  if (!(n_lo <= n_hi)) return {0, 0};
  // j = (n - start) * direction
  double j_lo, j_hi;
  if (r.direction > 0) {
    j_lo = n_lo - static_cast<double>(r.start);
    j_hi = n_hi - static_cast<double>(r.start);
  } else {
    j_lo = static_cast<double>(r.start) - n_hi;
    j_hi = static_cast<double>(r.start) - n_lo;
  }
  j_lo = std::max(j_lo, 0.0);
  j_hi = std::min(j_hi, static_cast<double>(r.count - 1));
  if (!(j_lo <= j_hi)) return {0, 0};
  return {static_cast<std::int64_t>(j_lo), static_cast<std::int64_t>(j_hi) + 1};
}

bool is_plain_identity(const MultiplierSeries& m) {
  return m.runs.size() == 1 && m.runs[0].count == 1 && m.runs[0].start == 0 && m.runs[0].first == cx{1.0, 0.0} &&
         m.scalar == cx{1.0, 0.0} && m.base_shift == 0.0;
}

void add_run_terms(PacketBuilder& out, const MultiplierSeries& m, const CoefficientRun& r, std::int64_t j0,
                   std::int64_t j1, const StepPacket& f, Interval window) {
  if (j0 >= j1) return;
  // Walk the geometric sequence by repeated multiplication, re-anchoring now
  // and then so the rounding drift stays at a few ulps.
  const cx ratio = r.ratio_modulus * phasor(r.ratio_phase);
  cx coef = r.term(j0);
  for (std::int64_t j = j0; j < j1; ++j) {
    if ((j - j0) % 64 == 0) coef = r.term(j);
    const double shift = m.base_shift + static_cast<double>(r.index(j)) * m.lattice_step;
    out.add(f, m.scalar * coef, -shift, window);
    coef *= ratio;
  }
}

}  // namespace

StepPacket apply_multiplier(const MultiplierSeries& m, const StepPacket& f, std::size_t max_terms) {
  if (f.empty()) return {};
  if (is_plain_identity(m)) return f;
  if (m.term_count() * f.cells().size() > max_terms)
    fail(ErrorCode::RangeViolation, "full multiplier expansion too large; use the windowed form");
  PacketBuilder out;
  for (const auto& r : m.runs) add_run_terms(out, m, r, 0, r.count, f, {-infinity, infinity});
  return out.build();
}

StepPacket apply_multiplier(const MultiplierSeries& m, const StepPacket& f, Interval window) {
  if (f.empty() || !(window.lo < window.hi)) return {};
  if (is_plain_identity(m)) return restrict_to(f, window);
  const Interval source = f.support();
  PacketBuilder out;
  for (const auto& r : m.runs) {
    const auto [j0, j1] = run_window(r, m.base_shift, m.lattice_step, source, window);
    add_run_terms(out, m, r, j0, j1, f, window);
  }
  return out.build();
}

cx apply_pointwise(const MultiplierSeries& m, const StepPacket& f, double x) {
  if (f.empty()) return {};
  const Interval source = f.support();
  cx sum{};
  for (const auto& r : m.runs) {
    const auto [j0, j1] = run_window(r, m.base_shift, m.lattice_step, source, {x, x});
    for (std::int64_t j = j0; j < j1; ++j)
      sum += r.term(j) * f(x + m.base_shift + static_cast<double>(r.index(j)) * m.lattice_step);
  }
  return m.scalar * sum;
}

}  // namespace lapis
