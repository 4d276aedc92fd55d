#pragma once

#include <limits>
#include <map>
#include <vector>

#include "nsm/spectral_field.hpp"

namespace nsm {

/// Sobolev norm from the weighted Parseval sum: weight (1+|k|^2)^s, or
/// |k|^{2s} when homogeneous. The homogeneous norm with s < 0 is undefined
/// for a field with nonzero mean (UndefinedNorm).
double sobolev_norm(const SpectralField& f, double s, bool homogeneous);

/// Dyadic block owning |k|: blocks are the disjoint shells
/// 2^{q-1/2} < |k| <= 2^{q+1/2}, each contained in 2^{q-1} < |k| <= 2^{q+1}.
/// Only meaningful for |k| > 0.
int dyadic_index(double k2);

/// Littlewood-Paley decomposition of a field into sharp dyadic shells.
inline constexpr double kBlockRoundoff = 1e-12;

class DyadicBlocks {
 public:
  /// Homogeneous: the zero mode is dropped. Inhomogeneous: the zero mode is
  /// assigned to the lowest shell present on the grid.
  static DyadicBlocks decompose(const SpectralField& f, bool homogeneous = true);

  int q_min() const noexcept { return q_min_; }
  int q_max() const noexcept { return q_min_ + static_cast<int>(blocks_.size()) - 1; }
  bool homogeneous() const noexcept { return homogeneous_; }

  /// Delta_q f; a zero field outside [q_min, q_max].
  SpectralField block(int q) const;
  /// S_q f = sum of blocks with index <= q - 1.
  SpectralField low_pass(int q) const;
  /// Sum of all blocks.
  SpectralField reconstruct() const;
  /// ||Delta_q f||_{L^2} keyed by q; only nonempty blocks appear.
  std::map<int, double> block_norms() const;
  /// Indices of blocks above round-off, i.e. with norm larger than
  /// kBlockRoundoff times the largest block.
  std::vector<int> nonempty() const;

 private:
  DyadicBlocks(const Grid& g, bool homogeneous) : grid_(g), homogeneous_(homogeneous) {}

  Grid grid_;
  bool homogeneous_;
  int q_min_ = 0;
  std::vector<SpectralField> blocks_;
};

/// sum_q w_q^2 ||Delta_q f||^2 with w_q = (1 + 2^{2q})^{s/2}, square-rooted.
/// The block-sum counterpart of the inhomogeneous Sobolev norm.
double block_sobolev_norm(const SpectralField& f, double s);

/// Per-block L^2 norms sampled at uniform time spacing dt; sample i sits at
/// t = i dt and the horizon is samples * dt.
struct BlockNormSeries {
  double dt = 0.0;
  bool homogeneous = true;
  std::vector<std::map<int, double>> samples;

  void push(const DyadicBlocks& b) { samples.push_back(b.block_norms()); }
  double horizon() const { return dt * static_cast<double>(samples.size()); }
};

inline constexpr double kTimeInfinity = std::numeric_limits<double>::infinity();

/// Chemin-Lerner norm: per block the time L^r norm (left-endpoint rule, or the
/// sample maximum for r = infinity), then the weighted l^2 sum over q with
/// weight 2^{qs} (homogeneous) or (1+2^q)^s. Requires r >= 1 and a nonempty
/// series with dt > 0.
double chemin_lerner_norm(const BlockNormSeries& series, double s, double r);

/// Time-stamped values of one norm.
struct NormSeries {
  double s = 0.0;
  bool homogeneous = true;
  double r = 2.0;
  double horizon = 0.0;
  std::vector<double> times;
  std::vector<double> values;

  /// Append a sample; times must increase strictly and values be >= 0.
  void push(double t, double value);
};

/// L^r in time of a uniformly sampled non-negative series, left-endpoint
/// rule; r = infinity gives the sample maximum.
double time_norm(const std::vector<double>& values, double dt, double r);

/// X^v_T = max(sup_t ||v||_{Hdot^{1/2}}, (int_0^T ||v||_{Hdot^{3/2}}^2)^{1/2})
/// for fields sampled at t = i dt, i < samples.size(), horizon samples*dt.
double xv_norm(const std::vector<SpectralField>& samples, double dt);

/// Incremental X^v_T tracker fed one sample per time step.
class XvMonitor {
 public:
  /// Register the sample at the left end of an interval of length dt.
  void add(const SpectralField& v, double dt);
  double sup_half() const noexcept { return sup_half_; }
  double l2_three_halves() const noexcept;
  double value() const noexcept;

 private:
  double sup_half_ = 0.0;
  double integral_ = 0.0;
};

}  // namespace nsm
