#include "stabctl/config.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace stabctl {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line) {
  double out;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError(line, "expected a number, got '" + v + "'");
  return out;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return model == o.model && params == o.params && poly == o.poly && rho == o.rho &&
         mode == o.mode && integration == o.integration && thresholds == o.thresholds &&
         output_dir == o.output_dir;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::vector<double> poly(8, 0.0);
  bool poly_seen = false;

  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string stripped = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(line, "expected 'key = value'");

    if (key == "model") {
      cfg.model = value;
    } else if (key == "a") {
      cfg.params.a = parse_number(value, line);
    } else if (key == "b") {
      cfg.params.b = parse_number(value, line);
    } else if (key == "c") {
      cfg.params.c = parse_number(value, line);
    } else if (key == "r") {
      cfg.params.r = parse_number(value, line);
    } else if (key == "rho") {
      cfg.rho = parse_number(value, line);
      if (!(cfg.rho > 0.0)) throw ConfigError(line, "rho must be positive");
    } else if (key == "mode") {
      if (value == "one-sided-x")
        cfg.mode = ControlMode::OneSidedX;
      else if (value == "two-sided")
        cfg.mode = ControlMode::TwoSided;
      else if (value == "one-sided-y")
        cfg.mode = ControlMode::OneSidedY;
      else
        throw ConfigError(line, "unknown mode '" + value + "'");
    } else if (key == "dt") {
      cfg.integration.dt = parse_number(value, line);
      if (!(cfg.integration.dt > 0.0)) throw ConfigError(line, "dt must be positive");
    } else if (key == "t_max") {
      cfg.integration.t_max = parse_number(value, line);
      if (!(cfg.integration.t_max > 0.0)) throw ConfigError(line, "t_max must be positive");
    } else if (key == "abs_tol") {
      cfg.integration.abs_tol = parse_number(value, line);
      if (!(cfg.integration.abs_tol > 0.0)) throw ConfigError(line, "abs_tol must be positive");
    } else if (key == "rel_tol") {
      cfg.integration.rel_tol = parse_number(value, line);
      if (!(cfg.integration.rel_tol > 0.0)) throw ConfigError(line, "rel_tol must be positive");
    } else if (key == "blowup_radius") {
      cfg.integration.blowup_radius = parse_number(value, line);
      if (!(cfg.integration.blowup_radius > 0.0))
        throw ConfigError(line, "blowup_radius must be positive");
    } else if (key == "method") {
      if (value == "adaptive")
        cfg.integration.method = StepMethod::DormandPrince;
      else if (value == "rk4")
        cfg.integration.method = StepMethod::RungeKutta4;
      else
        throw ConfigError(line, "unknown method '" + value + "'");
    } else if (key == "eps_fp") {
      cfg.thresholds.eps_fp = parse_number(value, line);
    } else if (key == "eps_cycle") {
      cfg.thresholds.eps_cycle = parse_number(value, line);
    } else if (key == "dwell_time") {
      cfg.thresholds.dwell_time = parse_number(value, line);
    } else if (key == "dt_check") {
      cfg.thresholds.dt_check = parse_number(value, line);
    } else if (key == "horizon") {
      cfg.thresholds.horizon = parse_number(value, line);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key.size() == 2 && key[0] == 'c' && key[1] >= '0' && key[1] <= '7') {
      poly[key[1] - '0'] = parse_number(value, line);
      poly_seen = true;
    } else {
      throw ConfigError(line, "unknown key '" + key + "'");
    }
  }
  if (poly_seen) {
    while (poly.size() > 1 && poly.back() == 0.0) poly.pop_back();
    cfg.poly = poly;
  }
  return cfg;
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "model = " << cfg.model << "\n";
  os << "a = " << format17(cfg.params.a) << "\n";
  os << "b = " << format17(cfg.params.b) << "\n";
  os << "c = " << format17(cfg.params.c) << "\n";
  os << "r = " << format17(cfg.params.r) << "\n";
  os << "rho = " << format17(cfg.rho) << "\n";
  os << "mode = " << to_string(cfg.mode) << "\n";
  os << "dt = " << format17(cfg.integration.dt) << "\n";
  os << "t_max = " << format17(cfg.integration.t_max) << "\n";
  os << "abs_tol = " << format17(cfg.integration.abs_tol) << "\n";
  os << "rel_tol = " << format17(cfg.integration.rel_tol) << "\n";
  os << "blowup_radius = " << format17(cfg.integration.blowup_radius) << "\n";
  os << "method = "
     << (cfg.integration.method == StepMethod::DormandPrince ? "adaptive" : "rk4") << "\n";
  os << "eps_fp = " << format17(cfg.thresholds.eps_fp) << "\n";
  os << "eps_cycle = " << format17(cfg.thresholds.eps_cycle) << "\n";
  os << "dwell_time = " << format17(cfg.thresholds.dwell_time) << "\n";
  os << "dt_check = " << format17(cfg.thresholds.dt_check) << "\n";
  os << "horizon = " << format17(cfg.thresholds.horizon) << "\n";
  os << "output_dir = " << cfg.output_dir << "\n";
  for (std::size_t i = 0; i < cfg.poly.size(); ++i)
    os << "c" << i << " = " << format17(cfg.poly[i]) << "\n";
  return os.str();
}

std::string effective_output_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("STABCTL_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

}  // namespace stabctl
