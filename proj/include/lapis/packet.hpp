#pragma once

#include <span>
#include <vector>

#include "lapis/domain.hpp"

namespace lapis {

// amplitude * e(frequency * x). Plain step packets only use frequency 0;
// the lattice basis functions e_n chi_0 need integer frequencies.
struct Wave {
  cx amplitude;
  double frequency = 0.0;
};

struct Cell {
  double lo;
  double hi;
  std::vector<Wave> waves;

  double width() const noexcept { return hi - lo; }
  cx value_at(double x) const noexcept;
};

// Breakpoints closer than this (relative to max(1,|x|)) are merged.
inline constexpr double breakpoint_tolerance = 1e-12;
double merge_tolerance(double x) noexcept;

// Compactly supported, piecewise (oscillatory-)constant function on the line.
// Always kept canonical: cells sorted and disjoint, no empty or sliver cells,
// no two adjacent cells carrying the same waves.
class StepPacket {
public:
  StepPacket() = default;

  // n+1 strictly increasing breakpoints and n cell values.
  static StepPacket from_breakpoints(std::span<const double> breakpoints, std::span<const cx> values);
  static StepPacket box(double lo, double hi, cx value = {1.0, 0.0});
  static StepPacket wave(double lo, double hi, cx amplitude, double frequency);

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  bool empty() const noexcept { return cells_.empty(); }
  Interval support() const;
  std::vector<double> breakpoints() const;
  bool piecewise_constant() const noexcept;

  // Value on the cell [lo, hi) containing x; zero outside the support.
  cx operator()(double x) const noexcept;
  // Integral of f(x) e(-lambda x) dx.
  cx fourier(double lambda) const noexcept;

private:
  friend class PacketBuilder;
  friend StepPacket translate(const StepPacket&, double);
  friend StepPacket scale(cx, const StepPacket&);
  friend StepPacket restrict_to(const StepPacket&, Interval);
  std::vector<Cell> cells_;
};

// Accumulates overlapping pieces and resolves them into a canonical packet.
class PacketBuilder {
public:
  void add(double lo, double hi, Wave wave);
  // Adds z * f(x - shift), clipped to window.
  void add(const StepPacket& f, cx z = {1.0, 0.0}, double shift = 0.0,
           Interval window = {-infinity, infinity});
  std::size_t piece_count() const noexcept { return pieces_.size(); }
  StepPacket build() const;

private:
  struct Piece {
    double lo, hi;
    Wave wave;
  };
  std::vector<Piece> pieces_;
};

StepPacket add(const StepPacket& f, const StepPacket& g);
StepPacket scale(cx z, const StepPacket& f);
// x -> f(x - t): moves the packet right by t.
StepPacket translate(const StepPacket& f, double t);
StepPacket restrict_to(const StepPacket& f, Interval window);
StepPacket restrict_to(const StepPacket& f, const ExteriorDomain& d, Component c);

inline StepPacket operator+(const StepPacket& f, const StepPacket& g) { return add(f, g); }
inline StepPacket operator-(const StepPacket& f, const StepPacket& g) { return add(f, scale(-1.0, g)); }
inline StepPacket operator*(cx z, const StepPacket& f) { return scale(z, f); }

double norm2(const StepPacket& f) noexcept;
// Integral of conj(f) g.
cx inner(const StepPacket& f, const StepPacket& g) noexcept;
double distance(const StepPacket& f, const StepPacket& g);
double mass_in(const StepPacket& f, Interval window);

// Canonical forms equal to tol per breakpoint and per amplitude.
bool approx_equal(const StepPacket& f, const StepPacket& g, double tol = 1e-14);

// True when every cell lies inside the window.
bool supported_in(const StepPacket& f, Interval window) noexcept;
// Mass on the barriers [0,1] and [alpha,beta].
double barrier_mass(const StepPacket& f, const ExteriorDomain& d);

// Integral of e(mu x) over [lo, hi].
cx integral_of_phase(double mu, double lo, double hi) noexcept;

}  // namespace lapis
