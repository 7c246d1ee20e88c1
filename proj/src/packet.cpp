#include "lapis/packet.hpp"

#include <algorithm>
#include <cmath>

#include "lapis/error.hpp"

namespace lapis {

double merge_tolerance(double x) noexcept { return breakpoint_tolerance * std::max(1.0, std::abs(x)); }

cx integral_of_phase(double mu, double lo, double hi) noexcept {
  const double width = hi - lo;
  if (mu == 0.0) return {width, 0.0};
  return phasor(mu * 0.5 * (lo + hi)) * (width * sinc_pi(mu * width));
}

cx Cell::value_at(double x) const noexcept {
  cx v{};
  for (const auto& w : waves) v += w.frequency == 0.0 ? w.amplitude : w.amplitude * phasor(w.frequency * x);
  return v;
}

StepPacket StepPacket::from_breakpoints(std::span<const double> breakpoints, std::span<const cx> values) {
  if (breakpoints.empty() && values.empty()) return {};
  if (breakpoints.size() != values.size() + 1)
    fail(ErrorCode::ValidationError, "packet needs exactly one more breakpoint than values");
  PacketBuilder b;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(breakpoints[i]) || !std::isfinite(breakpoints[i + 1]) ||
        !(breakpoints[i] < breakpoints[i + 1]))
      fail(ErrorCode::ValidationError, "packet breakpoints must be finite and strictly increasing");
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      fail(ErrorCode::ValidationError, "packet values must be finite");
    b.add(breakpoints[i], breakpoints[i + 1], Wave{values[i], 0.0});
  }
  return b.build();
}

StepPacket StepPacket::box(double lo, double hi, cx value) {
  const double bp[2] = {lo, hi};
  const cx v[1] = {value};
  return from_breakpoints(bp, v);
}

StepPacket StepPacket::wave(double lo, double hi, cx amplitude, double frequency) {
  if (!(lo < hi)) fail(ErrorCode::ValidationError, "wave cell needs lo < hi");
  PacketBuilder b;
  b.add(lo, hi, Wave{amplitude, frequency});
  return b.build();
}

Interval StepPacket::support() const {
  if (cells_.empty()) fail(ErrorCode::EmptySupport, "packet is zero");
  return {cells_.front().lo, cells_.back().hi};
}

std::vector<double> StepPacket::breakpoints() const {
  std::vector<double> out;
  for (const auto& c : cells_) {
    if (out.empty() || out.back() != c.lo) out.push_back(c.lo);
    out.push_back(c.hi);
  }
  return out;
}

bool StepPacket::piecewise_constant() const noexcept {
  for (const auto& c : cells_)
    for (const auto& w : c.waves)
      if (w.frequency != 0.0) return false;
  return true;
}

cx StepPacket::operator()(double x) const noexcept {
  auto it = std::upper_bound(cells_.begin(), cells_.end(), x,
                             [](double v, const Cell& c) { return v < c.lo; });
  if (it == cells_.begin()) return {};
  --it;
  return x < it->hi ? it->value_at(x) : cx{};
}

cx StepPacket::fourier(double lambda) const noexcept {
  cx sum{};
  for (const auto& c : cells_)
    for (const auto& w : c.waves) sum += w.amplitude * integral_of_phase(w.frequency - lambda, c.lo, c.hi);
  return sum;
}

void PacketBuilder::add(double lo, double hi, Wave wave) {
  if (!(lo < hi) || wave.amplitude == cx{}) return;
  pieces_.push_back({lo, hi, wave});
}

void PacketBuilder::add(const StepPacket& f, cx z, double shift, Interval window) {
  if (z == cx{}) return;
  for (const auto& c : f.cells()) {
    const double lo = std::max(c.lo + shift, window.lo);
    const double hi = std::min(c.hi + shift, window.hi);
    if (!(hi - lo > merge_tolerance(lo))) continue;
    for (const auto& w : c.waves) {
      const cx amp = w.frequency == 0.0 ? z * w.amplitude : z * w.amplitude * phasor(-w.frequency * shift);
      add(lo, hi, Wave{amp, w.frequency});
    }
  }
}

namespace {

void accumulate(std::vector<Wave>& waves, const Wave& w) {
  for (auto& existing : waves) {
    if (existing.frequency == w.frequency) {
      existing.amplitude += w.amplitude;
      return;
    }
  }
  waves.push_back(w);
}

bool same_waves(const std::vector<Wave>& a, const std::vector<Wave>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].frequency != b[i].frequency) return false;
    const double scale = std::max(std::abs(a[i].amplitude), std::abs(b[i].amplitude));
    if (std::abs(a[i].amplitude - b[i].amplitude) > 1e-15 * scale) return false;
  }
  return true;
}

}  // namespace

StepPacket PacketBuilder::build() const {
  StepPacket out;
  if (pieces_.empty()) return out;
  std::vector<double> ends;
  ends.reserve(2 * pieces_.size());
  for (const auto& p : pieces_) {
    ends.push_back(p.lo);
    ends.push_back(p.hi);
  }
  std::sort(ends.begin(), ends.end());
  std::vector<double> reps;
  for (double x : ends)
    if (reps.empty() || x - reps.back() > merge_tolerance(x)) reps.push_back(x);
  if (reps.size() < 2) return out;

  auto cluster_of = [&reps](double x) {
    auto it = std::lower_bound(reps.begin(), reps.end(), x - merge_tolerance(x));
    return static_cast<std::size_t>(it - reps.begin());
  };
  std::vector<std::vector<Wave>> slots(reps.size() - 1);
  for (const auto& p : pieces_) {
    const std::size_t i0 = cluster_of(p.lo), i1 = cluster_of(p.hi);
    for (std::size_t k = i0; k < i1 && k < slots.size(); ++k) accumulate(slots[k], p.wave);
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    auto& waves = slots[k];
    std::erase_if(waves, [](const Wave& w) { return w.amplitude == cx{}; });
    if (waves.empty()) continue;
    std::sort(waves.begin(), waves.end(),
              [](const Wave& l, const Wave& r) { return l.frequency < r.frequency; });
    if (!out.cells_.empty() && out.cells_.back().hi == reps[k] && same_waves(out.cells_.back().waves, waves)) {
      out.cells_.back().hi = reps[k + 1];
      continue;
    }
    out.cells_.push_back(Cell{reps[k], reps[k + 1], std::move(waves)});
  }
  return out;
}

StepPacket add(const StepPacket& f, const StepPacket& g) {
  if (g.empty()) return f;
  if (f.empty()) return g;
  PacketBuilder b;
  b.add(f);
  b.add(g);
  return b.build();
}

StepPacket scale(cx z, const StepPacket& f) {
  if (z == cx{}) return {};
  StepPacket out = f;
  for (auto& c : out.cells_)
    for (auto& w : c.waves) w.amplitude *= z;
  return out;
}

StepPacket translate(const StepPacket& f, double t) {
  StepPacket out = f;
  for (auto& c : out.cells_) {
    c.lo += t;
    c.hi += t;
    for (auto& w : c.waves)
      if (w.frequency != 0.0) w.amplitude *= phasor(-w.frequency * t);
  }
  return out;
}

StepPacket restrict_to(const StepPacket& f, Interval window) {
  StepPacket out;
  for (const auto& c : f.cells()) {
    const double lo = std::max(c.lo, window.lo);
    const double hi = std::min(c.hi, window.hi);
    if (!(hi - lo > merge_tolerance(lo))) continue;
    out.cells_.push_back(Cell{lo, hi, c.waves});
  }
  return out;
}

StepPacket restrict_to(const StepPacket& f, const ExteriorDomain& d, Component c) {
  return restrict_to(f, d.component(c));
}

double norm2(const StepPacket& f) noexcept {
  double sum = 0.0;
  for (const auto& c : f.cells()) {
    if (c.waves.size() == 1) {
      sum += std::norm(c.waves[0].amplitude) * c.width();
      continue;
    }
    for (const auto& u : c.waves)
      for (const auto& v : c.waves)
        sum += (std::conj(u.amplitude) * v.amplitude * integral_of_phase(v.frequency - u.frequency, c.lo, c.hi))
                   .real();
  }
  return sum;
}

cx inner(const StepPacket& f, const StepPacket& g) noexcept {
  cx sum{};
  const auto& fc = f.cells();
  const auto& gc = g.cells();
  std::size_t i = 0, j = 0;
  while (i < fc.size() && j < gc.size()) {
    const double lo = std::max(fc[i].lo, gc[j].lo);
    const double hi = std::min(fc[i].hi, gc[j].hi);
    if (hi > lo)
      for (const auto& u : fc[i].waves)
        for (const auto& v : gc[j].waves)
          sum += std::conj(u.amplitude) * v.amplitude * integral_of_phase(v.frequency - u.frequency, lo, hi);
    if (fc[i].hi < gc[j].hi) ++i;
    else ++j;
  }
  return sum;
}

double distance(const StepPacket& f, const StepPacket& g) { return std::sqrt(std::max(0.0, norm2(f - g))); }

double mass_in(const StepPacket& f, Interval window) { return norm2(restrict_to(f, window)); }

bool approx_equal(const StepPacket& f, const StepPacket& g, double tol) {
  double scale = 1.0;
  for (const auto* p : {&f, &g})
    for (const auto& c : p->cells())
      for (const auto& w : c.waves) scale = std::max(scale, std::abs(w.amplitude));
  const StepPacket diff = f - g;
  for (const auto& c : diff.cells())
    for (const auto& w : c.waves)
      if (std::abs(w.amplitude) > tol * scale) return false;
  return true;
}

bool supported_in(const StepPacket& f, Interval window) noexcept {
  for (const auto& c : f.cells())
    if (c.lo < window.lo || c.hi > window.hi) return false;
  return true;
}

double barrier_mass(const StepPacket& f, const ExteriorDomain& d) {
  return mass_in(f, d.barrier1()) + mass_in(f, d.barrier2());
}

}  // namespace lapis
