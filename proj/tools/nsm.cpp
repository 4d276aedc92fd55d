// Command-line front end: run, probe, thresholds, scenarios.
#include <CLI11.hpp>

#include <iostream>

#include "nsm/config.hpp"
#include "nsm/error.hpp"
#include "nsm/io.hpp"
#include "nsm/runner.hpp"
#include "nsm/scenarios.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-fluid Navier-Stokes-Maxwell pseudo-spectral simulator"};
  app.require_subcommand(1);

  std::string config_path, tag;
  auto* run = app.add_subcommand("run", "integrate a scenario and write series, snapshots and summary");
  run->add_option("config", config_path, "run configuration (YAML)")->required();

  auto* probe = app.add_subcommand("probe", "run a lemma ratio study");
  probe->add_option("tag", tag, "2.1, 2.3, PE1-PE4, heat or maxwell")->required();
  probe->add_option("config", config_path, "run configuration (YAML)")->required();

  auto* thresholds = app.add_subcommand("thresholds", "small-data constants for the scenario's data");
  thresholds->add_option("config", config_path, "run configuration (YAML)")->required();

  auto* scenarios = app.add_subcommand("scenarios", "list scenario presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*scenarios) {
      for (const auto& [name, text] : nsm::scenario_catalog()) std::cout << name << "\t" << text << "\n";
      return kOk;
    }
    const nsm::RunConfig cfg = nsm::parse_config(config_path);
    if (*run) {
      const nsm::RunResult r = nsm::execute_run(cfg);
      std::cout << r.summary.dump(2) << "\n";
      if (r.exit_code() != 0) std::cerr << "nsm: " << r.message << "\n";
      return r.exit_code();
    }
    if (*probe) {
      const nsm::RatioStudy s = nsm::execute_probe(tag, cfg);
      std::cout << nsm::to_json(s).dump(2) << "\n";
      return kOk;
    }
    if (*thresholds) {
      std::cout << nsm::threshold_summary(cfg).dump(2) << "\n";
      return kOk;
    }
  } catch (const nsm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const nsm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
