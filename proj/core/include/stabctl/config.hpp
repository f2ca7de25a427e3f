#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stabctl/augmented.hpp"
#include "stabctl/classifier.hpp"
#include "stabctl/integrator.hpp"

namespace stabctl {

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + what), line(line_) {}
};

/// A full run configuration. Parsed from `key = value` text (one pair per
/// line, `#` comments); unknown keys are rejected by name, missing keys
/// keep the documented defaults below.
struct RunConfig {
  std::string model = "bvp";
  BvpParams params;
  std::vector<double> poly;  // c0..c7 for the poly-1d model
  double rho = 2.5;
  ControlMode mode = ControlMode::OneSidedX;
  IntegrationSpec integration;
  Thresholds thresholds;
  std::string output_dir = ".";

  bool operator==(const RunConfig&) const;
};

RunConfig parse_config(const std::string& text);

/// Inverse of parse_config: parse(render(c)) == c for every valid config.
std::string render_config(const RunConfig& config);

/// Applies the STABCTL_OUTPUT_DIR environment override.
std::string effective_output_dir(const RunConfig& config);

}  // namespace stabctl
