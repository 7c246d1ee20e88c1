#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lapis/degenerate.hpp"
#include "lapis/packet.hpp"

namespace lapis {

enum class Command { Eigen, Density, Smatrix, Evolve, Scatter, Semigroup, Kernels, Degenerate, Verify };
std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

struct PacketSpec {
  Component component = Component::Minus;
  std::vector<double> breakpoints;
  std::vector<cx> values;

  StepPacket packet() const;
};

struct Scenario {
  inline static constexpr const char* schema = "lapis.scenario/1";

  std::string name;
  double alpha = 2.0;
  double beta = 3.0;
  double w = 1.0;
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  std::vector<PacketSpec> packets;
  std::vector<double> times{0.0, 0.5, 1.0, 2.0, 4.0};
  double lambda_lo = -2.0;
  double lambda_hi = 2.0;
  int lambda_count = 401;
  double eps = 1e-12;       // multiplier series truncation
  double quad_tol = 1e-10;  // quadrature tolerance
  std::optional<DegenerateModel> degenerate;
  std::filesystem::path output{"lapis_out"};

  ExteriorDomain domain() const { return ExteriorDomain::make(alpha, beta); }
  BoundaryMatrix boundary() const { return BoundaryMatrix::make(w, theta, phi, psi); }
  std::vector<double> lambda_grid() const;
  // Sum of all packets; supports are validated on load.
  StepPacket combined_packet() const;
  StepPacket packet_in(Component c) const;
};

// Parses and validates. ParseError for malformed text, ValidationError listing
// every violated constraint otherwise. With a command, its own requirements are
// checked as well (evolve needs at least one packet, scatter one on I-, ...).
Scenario parse_scenario(std::string_view text, std::optional<Command> command = std::nullopt);
Scenario load_scenario(const std::filesystem::path& path, std::optional<Command> command = std::nullopt);
std::vector<std::string> validate(const Scenario& s, std::optional<Command> command = std::nullopt);

}  // namespace lapis
