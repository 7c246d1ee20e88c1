#include <iostream>

#include <CLI11.hpp>

#include "lapis/commands.hpp"
#include "lapis/error.hpp"

namespace {

bool is_input_error(lapis::ErrorCode code) {
  using lapis::ErrorCode;
  return code == ErrorCode::ParseError || code == ErrorCode::ValidationError ||
         code == ErrorCode::OrderingViolation || code == ErrorCode::RangeViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lapis: wave packets scattered by two intervals"};
  std::string command, scenario_path;
  std::optional<std::string> out;
  std::optional<double> eps, tol;
  app.add_option("command", command, "eigen | density | smatrix | evolve | scatter | semigroup | kernels | degenerate | verify")
      ->required();
  app.add_option("--scenario", scenario_path, "scenario JSON file")->required();
  app.add_option("--out", out, "output directory (overrides the scenario)");
  app.add_option("--eps", eps, "multiplier series truncation")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto cmd = lapis::parse_command(command);
  if (!cmd) {
    std::cerr << "unknown command '" << command << "'\n";
    return 2;
  }
  try {
    const auto scenario = lapis::load_scenario(scenario_path, *cmd);
    lapis::RunOptions options;
    if (out) options.out = *out;
    options.eps = eps;
    options.tol = tol;
    const auto report = lapis::run_command(*cmd, scenario, options);
    for (const auto& c : report.checks)
      std::cout << lapis::to_string(c.status) << "  " << c.name << "  " << c.value
                << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
    return report.exit_code();
  } catch (const lapis::Error& e) {
    std::cerr << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
}
