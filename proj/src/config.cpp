#include "nsm/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "nsm/error.hpp"

namespace nsm {

namespace {

const std::set<std::string> kTopKeys = {"dimension", "N",        "L",          "dt",    "t_end",
                                        "formulation", "k_max",  "params",     "scheme", "scenario",
                                        "s1",        "c",        "cadence",    "cfl_safety",
                                        "output_dir", "seed"};

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("field '" + key + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("field '" + key + "' has an invalid value '" + node.Scalar() + "'");
  }
}

void require(bool ok, const std::string& field, const std::string& bound) {
  if (!ok) throw ConfigError("field '" + field + "' must satisfy " + bound);
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(17);
  o << x;
  return o.str();
}

}  // namespace

double RunConfig::length() const { return L > 0.0 ? L : 2.0 * std::numbers::pi; }

Formulation RunConfig::make_formulation() const {
  if (formulation == "physical") return Formulation::physical();
  if (formulation == "normalized") return Formulation::normalized();
  if (formulation == "bulk-current") return Formulation::bulk_current();
  if (formulation == "truncated") return Formulation::truncated(k_max);
  throw ConfigError("field 'formulation' must be one of physical, normalized, bulk-current, truncated");
}

StepperConfig RunConfig::stepper() const {
  StepperConfig s;
  s.dt = dt;
  s.t_end = t_end;
  s.cfl_safety = cfl_safety;
  s.scheme = scheme == "rk4" ? Scheme::rk4_plain : Scheme::rk4_integrating_factor;
  return s;
}

double maxwell_dt_limit(const RunConfig& cfg) {
  // bulk-current and normalized runs use unit constants
  const bool unit = cfg.formulation == "normalized" || cfg.formulation == "bulk-current";
  const double eps_mu = unit ? 1.0 : cfg.params.eps0 * cfg.params.mu0;
  return cfg.cfl_safety * cfg.length() / cfg.N * std::sqrt(eps_mu);
}

void validate(const RunConfig& cfg) {
  require(cfg.dimension == 2 || cfg.dimension == 3, "dimension", "dimension in {2, 3}");
  require(cfg.N >= 8, "N", "N >= 8");
  require(cfg.N % 2 == 0, "N", "N even");
  require(cfg.L >= 0.0, "L", "L > 0");
  require(cfg.dt > 0.0, "dt", "dt > 0");
  require(cfg.t_end >= 0.0, "t_end", "t_end >= 0");
  require(cfg.formulation == "physical" || cfg.formulation == "normalized" ||
              cfg.formulation == "bulk-current" || cfg.formulation == "truncated",
          "formulation", "one of physical, normalized, bulk-current, truncated");
  if (cfg.formulation == "truncated") require(cfg.k_max > 0.0, "k_max", "k_max > 0 for the truncated formulation");
  require(cfg.scheme == "rk4-if" || cfg.scheme == "rk4", "scheme", "one of rk4-if, rk4");
  require(!cfg.scenario.empty(), "scenario", "a scenario name");
  require(cfg.s1 > 0.0 && cfg.s1 < 1.0, "s1", "0 < s1 < 1");
  require(cfg.c > 0.0, "c", "c > 0");
  require(cfg.cadence >= 1, "cadence", "cadence >= 1");
  require(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0, "cfl_safety", "0 < cfl_safety <= 1");
  try {
    (void)cfg.params.validated();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  const double limit = maxwell_dt_limit(cfg);
  if (cfg.dt > limit) {
    throw ConfigError("field 'dt' = " + fmt(cfg.dt) + " exceeds the Maxwell wave CFL limit " +
                      fmt(limit) + " (cfl_safety * L/N * sqrt(eps0 mu0))");
  }
}

RunConfig parse_config_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("malformed config: expected a key: value mapping");

  RunConfig cfg;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kTopKeys.count(key)) throw ConfigError("unknown key '" + key + "'");
  }
  for (const char* k : {"dimension", "N", "dt", "t_end", "scenario"}) {
    if (!root[k]) throw ConfigError(std::string("missing required field '") + k + "'");
  }
  cfg.dimension = scalar<int>(root["dimension"], "dimension");
  // N is read as a real first so that 63.5 is rejected rather than truncated
  const double n = scalar<double>(root["N"], "N");
  if (n != std::floor(n)) throw ConfigError("field 'N' must be an integer");
  cfg.N = static_cast<int>(n);
  cfg.dt = scalar<double>(root["dt"], "dt");
  cfg.t_end = scalar<double>(root["t_end"], "t_end");
  cfg.scenario = scalar<std::string>(root["scenario"], "scenario");
  if (root["L"]) {
    cfg.L = scalar<double>(root["L"], "L");
    if (!(cfg.L > 0.0)) throw ConfigError("field 'L' must satisfy L > 0");
  }
  if (root["formulation"]) cfg.formulation = scalar<std::string>(root["formulation"], "formulation");
  if (root["k_max"]) cfg.k_max = scalar<double>(root["k_max"], "k_max");
  if (root["scheme"]) cfg.scheme = scalar<std::string>(root["scheme"], "scheme");
  if (root["s1"]) cfg.s1 = scalar<double>(root["s1"], "s1");
  if (root["c"]) cfg.c = scalar<double>(root["c"], "c");
  if (root["cadence"]) cfg.cadence = scalar<long>(root["cadence"], "cadence");
  if (root["cfl_safety"]) cfg.cfl_safety = scalar<double>(root["cfl_safety"], "cfl_safety");
  if (root["output_dir"]) cfg.output_dir = scalar<std::string>(root["output_dir"], "output_dir");
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");

  if (const YAML::Node p = root["params"]) {
    if (!p.IsMap()) throw ConfigError("field 'params' must be a mapping");
    const std::map<std::string, double*> reals = {
        {"n", &cfg.params.n},           {"m_minus", &cfg.params.m_minus},
        {"m_plus", &cfg.params.m_plus}, {"e", &cfg.params.e},
        {"eps0", &cfg.params.eps0},     {"mu0", &cfg.params.mu0},
        {"nu_minus", &cfg.params.nu_minus}, {"nu_plus", &cfg.params.nu_plus},
        {"alpha", &cfg.params.alpha}};
    for (const auto& kv : p) {
      const auto key = kv.first.as<std::string>();
      if (key == "Z") {
        cfg.params.Z = scalar<int>(kv.second, "params.Z");
      } else if (auto it = reals.find(key); it != reals.end()) {
        *it->second = scalar<double>(kv.second, "params." + key);
      } else {
        throw ConfigError("unknown key 'params." + key + "'");
      }
      cfg.explicit_params.insert(key);
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file '" + file.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace nsm
