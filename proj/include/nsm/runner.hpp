#pragma once

#include <string>

#include <json.hpp>

#include "nsm/config.hpp"
#include "nsm/integrator.hpp"
#include "nsm/probes.hpp"

namespace nsm {

struct RunResult {
  Termination termination = Termination::t_end_reached;
  bool cfl_violation = false;
  std::string message;
  long steps = 0;
  double final_time = 0.0;
  nlohmann::json summary;

  /// 0 on clean completion, 2 on blowup (non-finite state or a CFL
  /// violation during the run).
  int exit_code() const { return termination == Termination::blowup || cfl_violation ? 2 : 0; }
};

/// Run cfg.scenario and write series.csv, initial.snap, final.snap and
/// summary.json into cfg.output_dir.
RunResult execute_run(const RunConfig& cfg);

/// Threshold constants and classification of the scenario's initial data.
nlohmann::json threshold_summary(const RunConfig& cfg);

/// Probe tags accepted by execute_probe: 2.1, 2.3, PE1-PE4, heat, maxwell.
std::vector<std::string> probe_tags();

/// Run one probe with grid size and seed from cfg; writes
/// probe_<tag>.csv into cfg.output_dir.
RatioStudy execute_probe(const std::string& tag, const RunConfig& cfg);

}  // namespace nsm
