#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nsm/dynamics.hpp"
#include "nsm/error.hpp"

namespace nsm {

enum class Scheme {
  rk4_integrating_factor,  ///< Lawson RK4, viscous term integrated exactly
  rk4_plain,               ///< classical RK4 on the full tangent
};

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::rk4_integrating_factor;
  double t_end = 1.0;
  double cfl_safety = 0.9;

  /// Throws InvalidArgument on dt <= 0, t_end < 0 or cfl_safety outside (0, 1].
  void validate() const {
    if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
    if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be >= 0");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw InvalidArgument("cfl_safety must lie in (0, 1]");
  }
};

/// Fixed-step fourth-order Runge-Kutta for a semi-discrete system.
///
/// With the integrating factor each slot with diffusivity mu is evolved in
/// the variable exp(mu |k|^2 t) u, so pure diffusion is integrated exactly;
/// all other terms are explicit. After every step the fields are re-projected
/// onto divergence-free fields and checked for non-finite values.
template <class System>
class Stepper {
 public:
  using State = typename System::State;
  static constexpr std::size_t K = State::size;

  Stepper(const System& system, StepperConfig cfg) : system_(system), cfg_(cfg) { cfg_.validate(); }

  /// Advance by cfg.dt. Throws CflViolation or Blowup.
  State step(const State& s) const { return step(s, cfg_.dt); }

  /// Advance by h (used for a shortened final step).
  State step(const State& s, double h) const {
    const StabilityLimit lim = system_.stability_limit(s, cfg_.cfl_safety);
    if (h > lim.dt_max * (1.0 + 1e-12)) throw CflViolation(lim.constraint, lim.dt_max, h);
    State out = cfg_.scheme == Scheme::rk4_plain ? plain(s, h) : lawson(s, h);
    out.t = s.t + h;
    system_.project(out);
    for (const auto& f : out.fields) {
      if (!f.all_finite()) throw Blowup(out.t);
    }
    return out;
  }

  const System& system() const noexcept { return system_; }
  const StepperConfig& config() const noexcept { return cfg_; }

 private:
  // a + h * b, slot-wise, time a.t + dt_stage.
  static State combine(const State& a, double h, const State& b, double t) {
    State out = a;
    for (std::size_t i = 0; i < K; ++i) out.fields[i].axpy(h, b.fields[i]);
    out.t = t;
    return out;
  }

  State plain(const State& s, double h) const {
    const State k1 = system_.rhs(s, true);
    const State k2 = system_.rhs(combine(s, 0.5 * h, k1, s.t + 0.5 * h), true);
    const State k3 = system_.rhs(combine(s, 0.5 * h, k2, s.t + 0.5 * h), true);
    const State k4 = system_.rhs(combine(s, h, k3, s.t + h), true);
    State out = s;
    for (std::size_t i = 0; i < K; ++i) {
      out.fields[i].axpy(h / 6.0, k1.fields[i]);
      out.fields[i].axpy(h / 3.0, k2.fields[i]);
      out.fields[i].axpy(h / 3.0, k3.fields[i]);
      out.fields[i].axpy(h / 6.0, k4.fields[i]);
    }
    return out;
  }

  // Multiply slot fields by exp(-mu |k|^2 tau).
  void propagate(State& s, double tau) const {
    const auto mu = system_.diffusivity();
    for (std::size_t i = 0; i < K; ++i) {
      if (mu[i] == 0.0) continue;
      const std::vector<double>& f = factors(s.fields[i].grid(), mu[i], tau);
      for (int c = 0; c < s.fields[i].components(); ++c) {
        auto data = s.fields[i].component(c);
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t m = 0; m < n; ++m) data[m] *= f[m];
      }
    }
  }

  const std::vector<double>& factors(const Grid& g, double mu, double tau) const {
    auto& slot = cache_[{mu, tau}];
    if (slot.size() != g.size()) {
      slot.resize(g.size());
      const auto k2 = g.k2();
      for (std::size_t m = 0; m < g.size(); ++m) slot[m] = std::exp(-mu * k2[m] * tau);
    }
    return slot;
  }

  State lawson(const State& s, double h) const {
    // k1 = N(u); k2 = N(E2 (u + h/2 k1)); k3 = N(E2 u + h/2 k2);
    // k4 = N(E u + h E2 k3); u' = E u + h/6 (E k1 + 2 E2 (k2 + k3) + k4)
    const State k1 = system_.rhs(s, false);

    State a = combine(s, 0.5 * h, k1, s.t + 0.5 * h);
    propagate(a, 0.5 * h);
    const State k2 = system_.rhs(a, false);

    State u_half = s;
    propagate(u_half, 0.5 * h);
    const State k3 = system_.rhs(combine(u_half, 0.5 * h, k2, s.t + 0.5 * h), false);

    State k3_half = k3;
    propagate(k3_half, 0.5 * h);
    State u_full = s;
    propagate(u_full, h);
    const State k4 = system_.rhs(combine(u_full, h, k3_half, s.t + h), false);

    State k1_full = k1;
    propagate(k1_full, h);
    State mid = k2;
    for (std::size_t i = 0; i < K; ++i) mid.fields[i] += k3.fields[i];
    propagate(mid, 0.5 * h);

    State out = u_full;
    for (std::size_t i = 0; i < K; ++i) {
      out.fields[i].axpy(h / 6.0, k1_full.fields[i]);
      out.fields[i].axpy(h / 3.0, mid.fields[i]);
      out.fields[i].axpy(h / 6.0, k4.fields[i]);
    }
    return out;
  }

  System system_;
  StepperConfig cfg_;
  mutable std::map<std::pair<double, double>, std::vector<double>> cache_;
};

/// Callback interface for run(). on_step is invoked for the initial state
/// (step 0) and after every step; `sampled` is true every `cadence` steps,
/// starting with step 0. Observers must not keep references to the state.
template <class State>
class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_step(const State& s, long step, bool sampled) = 0;
  virtual bool stop_requested() const { return false; }
};

enum class Termination { t_end_reached, blowup, user_stop };

inline std::string to_string(Termination t) {
  switch (t) {
    case Termination::t_end_reached: return "t_end reached";
    case Termination::blowup: return "blowup";
    case Termination::user_stop: return "user stop";
  }
  return "unknown";
}

template <class State>
struct RunSummary {
  State final_state;
  double wall_seconds = 0.0;
  long steps = 0;
  Termination termination = Termination::t_end_reached;
  std::string message;
};

/// Number of steps needed to reach t_end with step dt; the last step is
/// shortened when t_end is not a multiple of dt.
inline long step_count(double t_end, double dt) {
  if (t_end <= 0.0) return 0;
  return static_cast<long>(std::ceil(t_end / dt - 1e-9));
}

/// Integrate `initial` to cfg.t_end. Blowup ends the run with termination
/// `blowup` and the last finite state; CFL violations propagate.
template <class System>
RunSummary<typename System::State> run(const typename System::State& initial, const System& system,
                                       const StepperConfig& cfg,
                                       std::span<Observer<typename System::State>* const> observers,
                                       long cadence = 10) {
  using State = typename System::State;
  if (cadence < 1) throw InvalidArgument("observer cadence must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const Stepper<System> stepper(system, cfg);
  RunSummary<State> out{initial, 0.0, 0, Termination::t_end_reached, ""};
  for (auto* o : observers) o->on_step(out.final_state, 0, true);

  const long total = step_count(cfg.t_end, cfg.dt);
  const double t0 = initial.t;
  for (long n = 1; n <= total; ++n) {
    bool stop = false;
    for (auto* o : observers) stop = stop || o->stop_requested();
    if (stop) {
      out.termination = Termination::user_stop;
      break;
    }
    const double h = n == total ? (t0 + cfg.t_end) - out.final_state.t : cfg.dt;
    try {
      out.final_state = stepper.step(out.final_state, h);
    } catch (const Blowup& b) {
      out.termination = Termination::blowup;
      out.message = b.what();
      break;
    }
    out.steps = n;
    for (auto* o : observers) o->on_step(out.final_state, n, n % cadence == 0);
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace nsm
