#pragma once

#include <optional>
#include <string>

#include "nsm/params.hpp"
#include "nsm/state.hpp"

namespace nsm {

/// Energy-weight extrema and the small-data constant of the 3D theorem.
struct ThresholdConstants {
  double lambda1 = 0.0;  ///< min of the seven energy/dissipation weights
  double lambda2 = 0.0;  ///< max of the four energy weights
  double C = 0.0;        ///< c times the max of the six rate expressions
  double c = 1.0;        ///< universal factor supplied by the caller
};

/// Throws InvalidArgument when c <= 0, or when a viscosity or alpha is zero
/// (lambda1 vanishes and C is unbounded).
ThresholdConstants compute_constants(const PhysicalParams& params, double c = 1.0);

/// Initial-data norms the classification needs.
struct InitialNorms {
  double v_minus_h = 0.0;     ///< ||v_-,0||_{H^{1/2}}
  double v_plus_h = 0.0;      ///< ||v_+,0||_{H^{1/2}}
  double v_minus_hdot = 0.0;  ///< ||v_-,0||_{Hdot^{1/2}}
  double v_plus_hdot = 0.0;   ///< ||v_+,0||_{Hdot^{1/2}}
  double v_minus_l2 = 0.0;
  double v_plus_l2 = 0.0;
  double e_l2 = 0.0;
  double b_l2 = 0.0;

  /// ||v_-||_{H^{1/2}} + ||v_+||_{H^{1/2}} + ||E||_{L^2} + ||B||_{L^2}
  double combined() const { return v_minus_h + v_plus_h + e_l2 + b_l2; }
  /// Same with the homogeneous velocity norms.
  double combined_homogeneous() const { return v_minus_hdot + v_plus_hdot + e_l2 + b_l2; }
  /// C0: sum of the four L^2 norms.
  double c0() const { return v_minus_l2 + v_plus_l2 + e_l2 + b_l2; }
};

InitialNorms initial_norms(const NsmState& s);

enum class ThresholdCase { small_c, large_c };  ///< 4C < 1, 4C >= 1

std::string to_string(ThresholdCase c);

struct ThresholdReport {
  ThresholdConstants constants;
  ThresholdCase regime = ThresholdCase::large_c;
  double threshold = 0.0;           ///< smallness bound on the combined norm
  double combined_norm = 0.0;       ///< with H^{1/2} velocities
  double combined_norm_homogeneous = 0.0;
  double c0 = 0.0;
  bool satisfied = false;
  double xv_bound = 0.0;            ///< predicted bound on ||v||_{X^v_T}
  /// Local existence time, when the C0 condition of the case holds;
  /// infinity for zero data.
  std::optional<double> t_star;
};

ThresholdReport classify(const ThresholdConstants& k, const InitialNorms& norms);

}  // namespace nsm
