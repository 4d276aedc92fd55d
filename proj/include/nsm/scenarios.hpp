#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsm/config.hpp"
#include "nsm/state.hpp"

namespace nsm {

struct Scenario {
  std::string name;
  NsmState initial;
  /// Parameters after presets; keys set explicitly in the config keep their value.
  PhysicalParams params;
};

/// (name, one-line description) of every preset.
std::vector<std::pair<std::string, std::string>> scenario_catalog();

/// Parameter presets of a scenario. Throws ConfigError for unknown names.
std::map<std::string, double> scenario_overrides(const std::string& name);

/// Apply presets to params, skipping keys listed in `keep`.
PhysicalParams apply_overrides(PhysicalParams params, const std::map<std::string, double>& overrides,
                               const std::set<std::string>& keep);

/// Build the initial state and effective parameters for cfg.scenario.
/// The state is divergence-free and dealiased; random presets are seeded
/// by cfg.seed.
Scenario make_scenario(const RunConfig& cfg);

/// Closed-form states shared by scenarios and tests.
NsmState taylor_green_state(const Grid& g);
NsmState maxwell_wave_state(const Grid& g);
NsmState heat_mode_state(const Grid& g);

/// Random solenoidal state whose fields have rms amplitude `rms`.
NsmState random_state(const Grid& g, std::uint64_t seed, double rms, double band = 4.0);

}  // namespace nsm
