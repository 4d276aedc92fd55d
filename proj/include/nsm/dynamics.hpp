#pragma once

#include <array>
#include <functional>
#include <string>

#include "nsm/params.hpp"
#include "nsm/state.hpp"

namespace nsm {

/// Which form of the two-fluid equations to evolve.
struct Formulation {
  enum class Kind {
    physical,      ///< full system with the given constants
    normalized,    ///< all constants one except alpha
    bulk_current,  ///< (u, j, E, B) variables, unit constants
    truncated,     ///< Galerkin system with frequency cutoff k_max
  };

  Kind kind = Kind::physical;
  double k_max = 0.0;

  static Formulation physical() { return {Kind::physical, 0.0}; }
  static Formulation normalized() { return {Kind::normalized, 0.0}; }
  static Formulation bulk_current() { return {Kind::bulk_current, 0.0}; }
  /// Throws InvalidArgument unless k_max > 0.
  static Formulation truncated(double k_max);

  std::string name() const;
};

/// Largest admissible step and the constraint that sets it.
struct StabilityLimit {
  double dt_max;
  std::string constraint;
};

/// Maximum pointwise speed |v| over the grid samples of v.
double max_speed(const SpectralField& v);

/// Right-hand side of the two-fluid system in (v_-, v_+, E, B) variables,
/// with both pressures eliminated by projecting the momentum forcing:
///
///   dv_- = mu_- lap v_- - P[(v_-.grad)v_- + a_-(E + v_- x B) - b_-(v_+ - v_-)]
///   dv_+ = mu_+ lap v_+ - P[(v_+.grad)v_+ - a_+(E + v_+ x B) + b_+(v_+ - v_-)]
///   dE   = c^2 curl B - (n e/eps0)(Z v_+ - v_-)
///   dB   = -curl E
///
/// In the truncated formulation every product and coupling term is wrapped
/// in the frequency cutoff, as in the Galerkin system.
class NsmSystem {
 public:
  using State = NsmState;

  /// Throws InvalidArgument for the bulk_current formulation (see
  /// BulkCurrentSystem).
  NsmSystem(const PhysicalParams& params, Formulation form);

  /// Tangent at `s`. The viscous term is left out when include_diffusion is
  /// false (the integrating-factor scheme treats it exactly). Throws
  /// RejectedState if the fields are not divergence-free or do not share one
  /// grid.
  State rhs(const State& s, bool include_diffusion = true) const;
  /// Diffusivity of each slot for the integrating factor.
  std::array<double, 4> diffusivity() const;
  /// Re-impose the divergence constraint on every field.
  void project(State& s) const;
  StabilityLimit stability_limit(const State& s, double cfl_safety) const;
  /// Initial data for this formulation (the cutoff is applied when truncated).
  State prepare(State s) const;

  const PhysicalParams& params() const noexcept { return params_; }
  const Formulation& formulation() const noexcept { return form_; }

 private:
  PhysicalParams params_;
  Formulation form_;
};

/// Tangent of the full system, viscous term included.
NsmState rhs(const NsmState& s, const PhysicalParams& params, Formulation form);

BulkState to_bulk_current(const NsmState& s);
NsmState from_bulk_current(const BulkState& s);

/// Unit-constant system in bulk velocity/current variables:
///
///   du = lap u - P[u.grad u + j.grad j - j x B]
///   dj = lap j - P[u.grad j + j.grad u - E - u x B] - 2 alpha j
///   dE = curl B - 2 j
///   dB = -curl E
class BulkCurrentSystem {
 public:
  using State = BulkState;

  explicit BulkCurrentSystem(double alpha);

  State rhs(const State& s, bool include_diffusion = true) const;
  std::array<double, 4> diffusivity() const { return {1.0, 1.0, 0.0, 0.0}; }
  void project(State& s) const;
  StabilityLimit stability_limit(const State& s, double cfl_safety) const;
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

BulkState rhs_bulk_current(const BulkState& s, double alpha);

/// Unit-constant Maxwell system driven by a divergence-free current source:
/// dE = curl B + f(t), dB = -curl E.
class MaxwellSystem {
 public:
  using State = MaxwellState;
  using Forcing = std::function<SpectralField(double)>;

  MaxwellSystem() = default;
  explicit MaxwellSystem(Forcing forcing) : forcing_(std::move(forcing)) {}

  State rhs(const State& s, bool include_diffusion = true) const;
  std::array<double, 2> diffusivity() const { return {0.0, 0.0}; }
  void project(State& s) const;
  StabilityLimit stability_limit(const State& s, double cfl_safety) const;

 private:
  Forcing forcing_;
};

/// Divergence tolerance used when validating states handed to rhs.
inline constexpr double kDivergenceTolerance = 1e-11;

}  // namespace nsm
