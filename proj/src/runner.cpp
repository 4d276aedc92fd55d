#include "nsm/runner.hpp"

#include <memory>

#include "nsm/diagnostics.hpp"
#include "nsm/dynamics.hpp"
#include "nsm/error.hpp"
#include "nsm/io.hpp"
#include "nsm/scenarios.hpp"
#include "nsm/thresholds.hpp"

namespace nsm {

namespace {

// Feeds (u, j, E, B) states to an observer of (v_-, v_+, E, B).
class BulkAdapter : public Observer<BulkState> {
 public:
  explicit BulkAdapter(Observer<NsmState>& inner) : inner_(inner) {}
  void on_step(const BulkState& s, long step, bool sampled) override {
    inner_.on_step(from_bulk_current(s), step, sampled);
  }

 private:
  Observer<NsmState>& inner_;
};

nlohmann::json config_json(const RunConfig& cfg, const PhysicalParams& p) {
  return {{"dimension", cfg.dimension},
          {"N", cfg.N},
          {"L", cfg.length()},
          {"dt", cfg.dt},
          {"t_end", cfg.t_end},
          {"formulation", cfg.formulation},
          {"k_max", cfg.k_max},
          {"scheme", cfg.scheme},
          {"scenario", cfg.scenario},
          {"s1", cfg.s1},
          {"c", cfg.c},
          {"cadence", cfg.cadence},
          {"cfl_safety", cfg.cfl_safety},
          {"seed", cfg.seed},
          {"params",
           {{"n", p.n},
            {"m_minus", p.m_minus},
            {"m_plus", p.m_plus},
            {"e", p.e},
            {"Z", p.Z},
            {"eps0", p.eps0},
            {"mu0", p.mu0},
            {"nu_minus", p.nu_minus},
            {"nu_plus", p.nu_plus},
            {"alpha", p.alpha}}}};
}

nlohmann::json thresholds_or_reason(const PhysicalParams& p, double c, const NsmState& initial) {
  try {
    return to_json(classify(compute_constants(p, c), initial_norms(initial)));
  } catch (const InvalidArgument& e) {
    return {{"unavailable", e.what()}};
  }
}

template <class System>
RunSummary<typename System::State> integrate(const typename System::State& initial, const System& sys,
                                             const RunConfig& cfg,
                                             Observer<typename System::State>& obs, RunResult& out) {
  Observer<typename System::State>* list[] = {&obs};
  try {
    return run(initial, sys, cfg.stepper(), std::span<Observer<typename System::State>* const>(list),
               cfg.cadence);
  } catch (const CflViolation& e) {
    out.cfl_violation = true;
    out.message = e.what();
    return {initial, 0.0, 0, Termination::blowup, e.what()};
  }
}

}  // namespace

RunResult execute_run(const RunConfig& cfg) {
  validate(cfg);
  const Scenario sc = make_scenario(cfg);
  const Formulation form = cfg.make_formulation();
  const bool bulk = form.kind == Formulation::Kind::bulk_current;
  const bool unit = bulk || form.kind == Formulation::Kind::normalized;
  const PhysicalParams params = unit ? PhysicalParams::unit(sc.params.alpha) : sc.params.validated();

  // prepare: project, dealias, and truncate when needed
  const NsmSystem nsm_system(params, bulk ? Formulation::normalized() : form);
  const NsmState initial = nsm_system.prepare(sc.initial);
  DiagnosticsCollector diag(params, form, initial, cfg.s1);

  RunResult out;
  NsmState final_state = initial;
  double wall = 0.0;
  if (bulk) {
    const BulkCurrentSystem sys(params.alpha);
    BulkAdapter adapter(diag);
    const auto r = integrate(to_bulk_current(initial), sys, cfg, adapter, out);
    final_state = from_bulk_current(r.final_state);
    out.termination = r.termination;
    out.steps = r.steps;
    wall = r.wall_seconds;
    if (!out.cfl_violation) out.message = r.message;
  } else {
    const auto r = integrate(initial, nsm_system, cfg, diag, out);
    final_state = r.final_state;
    out.termination = r.termination;
    out.steps = r.steps;
    wall = r.wall_seconds;
    if (!out.cfl_violation) out.message = r.message;
  }
  out.final_time = final_state.t;

  const auto& dir = cfg.output_dir;
  write_series(dir / "series.csv", diag.columns(), diag.rows());
  write_snapshot(dir / "initial.snap", initial);
  write_snapshot(dir / "final.snap", final_state);

  nlohmann::json& j = out.summary;
  j["config"] = config_json(cfg, params);
  j["termination"] = out.cfl_violation ? "cfl violation" : to_string(out.termination);
  j["message"] = out.message;
  j["steps"] = out.steps;
  j["final_time"] = out.final_time;
  j["wall_seconds"] = wall;
  j["energy"] = to_json(diag.energy().last());
  j["energy_max_relative_excess"] = diag.energy().max_excess();
  j["apriori"] = to_json(diag.apriori().report());
  j["max_divergence_residual"] = diag.max_divergence_residual();
  j["thresholds"] = thresholds_or_reason(params, cfg.c, initial);
  write_json(dir / "summary.json", j);
  return out;
}

nlohmann::json threshold_summary(const RunConfig& cfg) {
  validate(cfg);
  const Scenario sc = make_scenario(cfg);
  const ThresholdReport r = classify(compute_constants(sc.params, cfg.c), initial_norms(sc.initial));
  nlohmann::json j = to_json(r);
  j["scenario"] = cfg.scenario;
  return j;
}

std::vector<std::string> probe_tags() {
  return {"2.1", "2.3", "PE1", "PE2", "PE3", "PE4", "heat", "maxwell"};
}

RatioStudy execute_probe(const std::string& tag, const RunConfig& cfg) {
  validate(cfg);
  RatioStudy study;
  auto require_dim = [&](int d) {
    if (cfg.dimension != d) {
      throw ConfigError("probe '" + tag + "' runs in dimension " + std::to_string(d) +
                        "; set dimension: " + std::to_string(d));
    }
  };
  if (tag == "heat") {
    require_dim(2);
    HeatProbeConfig h;
    h.n = cfg.N;
    h.seed = cfg.seed;
    h.horizon = cfg.t_end > 0.0 ? cfg.t_end : 1.0;
    study = probe_heat_semigroup(h);
    HeatProbeConfig spread = h;
    study.extras["friction_spread_0_1_10"] = friction_spread(spread, {0.0, 1.0, 10.0});
  } else if (tag == "maxwell") {
    require_dim(2);
    MaxwellProbeConfig m;
    m.n = cfg.N;
    m.seed = cfg.seed;
    m.dt = cfg.dt;
    m.horizon = cfg.t_end > 0.0 ? cfg.t_end : 1.0;
    study = probe_maxwell_bound(m);
  } else {
    ProductTag t;
    try {
      t = parse_product_tag(tag);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    require_dim(product_dimension(t));
    ProductCorpus c = default_product_corpus(t, cfg.N);
    c.seed = cfg.seed;
    study = probe_product_estimate(t, c);
  }
  write_ratio_study(cfg.output_dir / ("probe_" + tag + ".csv"), study);
  return study;
}

}  // namespace nsm
