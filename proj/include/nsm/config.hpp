#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>

#include "nsm/dynamics.hpp"
#include "nsm/integrator.hpp"
#include "nsm/params.hpp"

namespace nsm {

/// Validated run configuration.
struct RunConfig {
  int dimension = 2;
  int N = 0;
  double L = 0.0;  ///< 0 means 2 pi
  double dt = 0.0;
  double t_end = 0.0;
  std::string formulation = "physical";
  double k_max = 0.0;
  PhysicalParams params;
  /// Parameter keys set in the file; these win over scenario presets.
  std::set<std::string> explicit_params;
  std::string scheme = "rk4-if";
  std::string scenario;
  double s1 = 0.5;
  double c = 1.0;
  long cadence = 10;
  double cfl_safety = 0.9;
  std::filesystem::path output_dir = "nsm-out";
  std::uint64_t seed = 1;

  double length() const;
  Formulation make_formulation() const;
  StepperConfig stepper() const;
};

/// Parse a YAML mapping of scalars with one nested `params` mapping.
/// Throws ConfigError on malformed input, unknown keys, or out-of-range
/// values; the message names the field.
RunConfig parse_config(const std::filesystem::path& file);
RunConfig parse_config_text(const std::string& text);

/// Range checks shared by the parser and programmatic callers.
void validate(const RunConfig& cfg);

/// Maxwell wave limit cfl_safety * dx * sqrt(eps0 mu0) for the config.
double maxwell_dt_limit(const RunConfig& cfg);

}  // namespace nsm
