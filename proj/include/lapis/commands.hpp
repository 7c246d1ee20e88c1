#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lapis/scenario.hpp"

namespace lapis {

// Measured checks are reported but never fail a run.
enum class CheckStatus { Pass, Fail, Measured };
std::string_view to_string(CheckStatus s) noexcept;

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Measured;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct RunReport {
  Command command = Command::Verify;
  std::string scenario;
  std::vector<Check> checks;
  std::vector<std::filesystem::path> artifacts;

  bool ok() const noexcept;
  int exit_code() const noexcept { return ok() ? 0 : 1; }
  std::string to_json() const;
};

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<double> eps;
  std::optional<double> tol;
  bool write_files = true;
};

RunReport run_command(Command command, const Scenario& scenario, const RunOptions& options = {});

// One CSV table: header row then rows of numbers printed with %.15g.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> packet_rows(const StepPacket& f);

}  // namespace lapis
