#include "lapis/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lapis/error.hpp"

namespace lapis {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Command, std::string_view>, 9> command_names{{
    {Command::Eigen, "eigen"},
    {Command::Density, "density"},
    {Command::Smatrix, "smatrix"},
    {Command::Evolve, "evolve"},
    {Command::Scatter, "scatter"},
    {Command::Semigroup, "semigroup"},
    {Command::Kernels, "kernels"},
    {Command::Degenerate, "degenerate"},
    {Command::Verify, "verify"},
}};

std::optional<Component> parse_component(std::string_view tag) {
  for (Component c : all_components)
    if (to_string(c) == tag) return c;
  return std::nullopt;
}

template <class T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

cx read_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw json::type_error::create(302, "packet value must be a number or [re, im]", &j);
}

DegenerateModel read_degenerate(const json& j, std::vector<std::string>& problems) {
  const auto model = j.at("model").get<std::string>();
  const double theta = j.value("theta", 0.0), alpha = j.value("alpha", 1.0), w = j.value("w", 1.0);
  try {
    if (model == "one_point") return DegenerateModel::one_point(theta);
    if (model == "one_interval") return DegenerateModel::one_interval(theta, alpha);
    if (model == "two_points") return DegenerateModel::two_points(w, alpha);
    problems.push_back("degenerate.model must be one_point, one_interval or two_points, got '" + model + "'");
  } catch (const Error& e) {
    problems.push_back(std::string("degenerate: ") + e.what());
  }
  return DegenerateModel::one_point(0.0);
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  for (auto [cmd, name] : command_names)
    if (cmd == c) return name;
  return "?";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (auto [cmd, n] : command_names)
    if (n == name) return cmd;
  return std::nullopt;
}

StepPacket PacketSpec::packet() const { return StepPacket::from_breakpoints(breakpoints, values); }

std::vector<double> Scenario::lambda_grid() const {
  std::vector<double> g(static_cast<std::size_t>(lambda_count));
  for (int i = 0; i < lambda_count; ++i)
    g[static_cast<std::size_t>(i)] =
        lambda_count == 1 ? lambda_lo : lambda_lo + (lambda_hi - lambda_lo) * i / (lambda_count - 1);
  return g;
}

StepPacket Scenario::combined_packet() const {
  StepPacket sum;
  for (const auto& p : packets) sum = sum + p.packet();
  return sum;
}

StepPacket Scenario::packet_in(Component c) const {
  StepPacket sum;
  for (const auto& p : packets)
    if (p.component == c) sum = sum + p.packet();
  return sum;
}

std::vector<std::string> validate(const Scenario& s, std::optional<Command> command) {
  std::vector<std::string> out;
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(s.alpha) || !(s.alpha > 1.0)) out.push_back("domain.alpha must exceed 1");
  if (!finite(s.beta) || !(s.beta > s.alpha)) out.push_back("domain ordering: need 1 < alpha < beta");
  if (!(s.w >= 0.0 && s.w <= 1.0)) out.push_back("boundary.w must lie in [0, 1]");
  if (!finite(s.theta) || !finite(s.phi) || !finite(s.psi)) out.push_back("boundary phases must be finite");
  if (!(s.eps > 0.0)) out.push_back("tolerances.eps must be positive");
  if (!(s.quad_tol > 0.0)) out.push_back("tolerances.quad_tol must be positive");
  if (s.lambda_count < 1) out.push_back("lambda.count must be at least 1");
  if (!finite(s.lambda_lo) || !finite(s.lambda_hi) || !(s.lambda_lo < s.lambda_hi))
    out.push_back("lambda: need finite lo < hi");
  for (double t : s.times)
    if (!finite(t)) out.push_back("times must be finite");

  for (std::size_t k = 0; k < s.packets.size(); ++k) {
    const auto& p = s.packets[k];
    const std::string tag = "packets[" + std::to_string(k) + "]";
    if (p.breakpoints.size() < 2 || p.values.size() + 1 != p.breakpoints.size()) {
      out.push_back(tag + ": need n+1 breakpoints for n values");
      continue;
    }
    bool increasing = true;
    for (std::size_t i = 1; i < p.breakpoints.size(); ++i)
      increasing = increasing && p.breakpoints[i - 1] < p.breakpoints[i] && finite(p.breakpoints[i]);
    if (!increasing || !finite(p.breakpoints.front())) {
      out.push_back(tag + ": breakpoints must be finite and strictly increasing");
      continue;
    }
    if (s.alpha > 1.0 && s.beta > s.alpha) {
      const Interval c = ExteriorDomain::make(s.alpha, s.beta).component(p.component);
      if (p.breakpoints.front() < c.lo || p.breakpoints.back() > c.hi)
        out.push_back(tag + ": support must lie in component " + std::string(to_string(p.component)));
    }
  }

  if (command) {
    auto has = [&](Component c) {
      for (const auto& p : s.packets)
        if (p.component == c) return true;
      return false;
    };
    switch (*command) {
      case Command::Evolve:
        if (s.packets.empty()) out.push_back(std::string(to_string(*command)) + " needs at least one packet");
        break;
      case Command::Scatter:
        if (!has(Component::Minus)) out.push_back("scatter needs a packet on component minus");
        break;
      case Command::Semigroup:
        if (!has(Component::Zero)) out.push_back("semigroup needs a packet on component zero");
        break;
      default: break;
    }
  }
  return out;
}

Scenario parse_scenario(std::string_view text, std::optional<Command> command) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  Scenario s;
  std::vector<std::string> problems;
  try {
    if (!j.is_object()) fail(ErrorCode::ParseError, "scenario must be a JSON object");
    const auto schema = j.value("schema", std::string{});
    if (schema != Scenario::schema)
      problems.push_back("schema must be '" + std::string(Scenario::schema) + "', got '" + schema + "'");
    read(j, "name", s.name);
    const auto& dom = j.at("domain");
    read(dom, "alpha", s.alpha);
    read(dom, "beta", s.beta);
    const auto& bnd = j.at("boundary");
    read(bnd, "w", s.w);
    read(bnd, "theta", s.theta);
    read(bnd, "phi", s.phi);
    read(bnd, "psi", s.psi);
    if (j.contains("packets")) {
      for (const auto& pj : j.at("packets")) {
        PacketSpec p;
        const auto tag = pj.at("component").get<std::string>();
        if (auto c = parse_component(tag))
          p.component = *c;
        else
          problems.push_back("unknown component '" + tag + "'");
        p.breakpoints = pj.at("breakpoints").get<std::vector<double>>();
        for (const auto& v : pj.at("values")) p.values.push_back(read_complex(v));
        s.packets.push_back(std::move(p));
      }
    }
    read(j, "times", s.times);
    if (j.contains("lambda")) {
      const auto& lj = j.at("lambda");
      read(lj, "lo", s.lambda_lo);
      read(lj, "hi", s.lambda_hi);
      read(lj, "count", s.lambda_count);
    }
    if (j.contains("tolerances")) {
      read(j.at("tolerances"), "eps", s.eps);
      read(j.at("tolerances"), "quad_tol", s.quad_tol);
    }
    if (j.contains("degenerate")) s.degenerate = read_degenerate(j.at("degenerate"), problems);
    if (j.contains("output")) s.output = j.at("output").get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  for (auto& p : validate(s, command)) problems.push_back(std::move(p));
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << problems.size() << " constraint(s) violated:";
    for (const auto& p : problems) msg << "\n  - " << p;
    fail(ErrorCode::ValidationError, msg.str());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path, std::optional<Command> command) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), command);
}

}  // namespace lapis
