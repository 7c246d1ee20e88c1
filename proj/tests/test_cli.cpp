#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sys/wait.h>
#include <sstream>

#include <json.hpp>

#include "lapis/commands.hpp"
#include "lapis/error.hpp"

using namespace lapis;
namespace fs = std::filesystem;

namespace {

const fs::path scenarios{LAPIS_SCENARIO_DIR};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("lapis_test_" + name);
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LAPIS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("bundled scenarios load") {
  for (const char* name : {"phased_box", "half_reflector", "w_zero_boundstates", "w_one_splice", "comb_limit", "two_points"})
    CHECK_NOTHROW(load_scenario(scenarios / (std::string(name) + ".json")));
  const auto s = load_scenario(scenarios / "half_reflector.json");
  CHECK(s.alpha == 2.0);
  CHECK(s.beta == 3.0);
  CHECK(s.w == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  const auto box = s.packet_in(Component::Minus);
  CHECK(box.support().lo == -0.5);
  CHECK(box.support().hi == 0.0);
}

TEST_CASE("validation lists every violation") {
  const std::string bad = R"({"schema": "lapis.scenario/1", "domain": {"alpha": 3, "beta": 2},
    "boundary": {"w": 1.5}, "tolerances": {"eps": -1}})";
  try {
    parse_scenario(bad);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    const std::string what = e.what();
    CHECK(what.find("ordering") != std::string::npos);
    CHECK(what.find("boundary.w") != std::string::npos);
    CHECK(what.find("eps") != std::string::npos);
  }
  const std::string empty = R"({"schema": "lapis.scenario/1", "domain": {"alpha": 2, "beta": 3},
    "boundary": {"w": 0.5}, "packets": []})";
  CHECK_NOTHROW(parse_scenario(empty));
  CHECK_THROWS_AS(parse_scenario(empty, Command::Evolve), Error);
  CHECK_NOTHROW(parse_scenario(empty, Command::Verify));
  try {
    parse_scenario("{ not json", Command::Eigen);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  const std::string outside = R"({"schema": "lapis.scenario/1", "domain": {"alpha": 2, "beta": 3},
    "boundary": {"w": 0.5}, "packets": [{"component": "zero", "breakpoints": [0.5, 1.5], "values": [1]}]})";
  CHECK_THROWS_AS(parse_scenario(outside), Error);
}

TEST_CASE("density CSV reads 3 at lambda = 0 for the half reflector") {
  auto s = load_scenario(scenarios / "half_reflector.json");
  RunOptions o;
  o.out = scratch("density");
  const auto r = run_command(Command::Density, s, o);
  CHECK(r.ok());
  const auto csv = slurp(*o.out / "density.csv");
  CHECK(csv.rfind("lambda,value\n", 0) == 0);
  CHECK(csv.find("\n0,3\n") != std::string::npos);
}

TEST_CASE("evolve writes one snapshot per time and is deterministic") {
  auto s = load_scenario(scenarios / "half_reflector.json");
  RunOptions a, b;
  a.out = scratch("evolve_a");
  b.out = scratch("evolve_b");
  const auto ra = run_command(Command::Evolve, s, a);
  run_command(Command::Evolve, s, b);
  CHECK(ra.ok());
  for (int k = 0; k < 5; ++k) {
    const auto name = "evolve_t" + std::to_string(k) + ".csv";
    const auto text = slurp(*a.out / name);
    CHECK(text.rfind("x,re,im,abs2\n", 0) == 0);
    CHECK(text == slurp(*b.out / name));
  }
  // t = 1: transit amplitude sqrt(3)/2 on [1.5, 2] and -1/2 on [3.5, 4]
  const auto t1 = slurp(*a.out / "evolve_t2.csv");
  CHECK(t1.find("1.5,0.866025403784439") != std::string::npos);
  CHECK(t1.find("3.5,-0.5") != std::string::npos);
}

TEST_CASE("report json lists every check once") {
  auto s = load_scenario(scenarios / "two_points.json");
  RunOptions o;
  o.out = scratch("degenerate");
  const auto r = run_command(Command::Degenerate, s, o);
  const auto j = nlohmann::json::parse(slurp(*o.out / "report.json"));
  CHECK(j["command"] == "degenerate");
  CHECK(j["checks"].size() == r.checks.size());
  std::set<std::string> names;
  for (const auto& c : j["checks"]) names.insert(c["name"].get<std::string>());
  CHECK(names.size() == r.checks.size());
  CHECK(r.ok());
}

TEST_CASE("exit codes of the binary") {
  const auto out = scratch("cli");
  CHECK(run_cli("eigen --scenario " + (scenarios / "half_reflector.json").string() + " --out " + out.string()) == 0);
  CHECK(run_cli("eigen --scenario /nonexistent.json") == 2);
  CHECK(run_cli("frobnicate --scenario " + (scenarios / "half_reflector.json").string()) == 2);
  const auto bad = out / "bad.json";
  std::ofstream(bad) << R"({"schema": "lapis.scenario/1", "domain": {"alpha": 3, "beta": 2}, "boundary": {"w": 0.5}})";
  CHECK(run_cli("eigen --scenario " + bad.string()) == 2);
  CHECK(run_cli("smatrix --scenario " + (scenarios / "w_one_splice.json").string() + " --out " + out.string() +
                " --eps 1e-13 --tol 1e-9") == 0);
}

TEST_CASE("verify skips packet checks when there are no packets") {
  const auto s = load_scenario(scenarios / "comb_limit.json");
  RunOptions o;
  o.write_files = false;
  const auto r = run_command(Command::Verify, s, o);
  CHECK(r.ok());
  for (const auto& c : r.checks) CHECK(c.name != "norm_preserved");
}

TEST_CASE("every command runs on every bundled scenario") {
  for (const char* name : {"phased_box", "w_zero_boundstates", "w_one_splice", "comb_limit", "two_points"}) {
    const auto s = load_scenario(scenarios / (std::string(name) + ".json"));
    for (auto cmd : {Command::Eigen, Command::Density, Command::Smatrix, Command::Kernels, Command::Degenerate}) {
      RunOptions o;
      o.write_files = false;
      const auto r = run_command(cmd, s, o);
      for (const auto& c : r.checks) CHECK_MESSAGE(c.status != CheckStatus::Fail, name, " ", c.name, " ", c.detail);
    }
  }
}
