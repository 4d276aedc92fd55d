#pragma once

#include <array>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "nsm/integrator.hpp"
#include "nsm/lp_norms.hpp"
#include "nsm/params.hpp"
#include "nsm/state.hpp"

namespace nsm {

/// Energy summands and dissipation integrals at one time.
struct EnergyReport {
  double t = 0.0;
  double kinetic_minus = 0.0;  ///< (n m_-/2 eps0) ||v_-||^2
  double kinetic_plus = 0.0;   ///< (n m_+/2 eps0) ||v_+||^2
  double electric = 0.0;       ///< ||E||^2 / 2
  double magnetic = 0.0;       ///< ||B||^2 / (2 eps0 mu0)
  double viscous_minus = 0.0;  ///< (nu_-/eps0) int ||v_-||_{Hdot^1}^2
  double viscous_plus = 0.0;   ///< (nu_+/eps0) int ||v_+||_{Hdot^1}^2
  double friction = 0.0;       ///< (alpha/eps0) int ||v_- - v_+||^2
  double residual = 0.0;       ///< total + dissipation - initial total
  double initial_total = 0.0;

  double total() const { return kinetic_minus + kinetic_plus + electric + magnetic; }
  double dissipated() const { return viscous_minus + viscous_plus + friction; }
  /// residual / initial total (0 when the initial total vanishes).
  double relative_residual() const { return initial_total > 0.0 ? residual / initial_total : 0.0; }
};

/// Time integrals of the three dissipation rates.
struct DissipationAccumulators {
  double viscous_minus = 0.0;
  double viscous_plus = 0.0;
  double friction = 0.0;
};

/// Integral over one interval [t_{k-1}, t_k] of a non-negative sample
/// series. The series is modelled as exp(rate * t) times a polynomial: the
/// rate comes from the samples at the interval ends and the polynomial
/// interpolates the rescaled samples at every node (up to four). Exact for
/// a pure exponential, fourth order for smooth data on four nodes.
class IntervalQuadrature {
 public:
  /// Node times, oldest first; 2 to 4 strictly increasing values. The
  /// interval ends at node k (default: the newest).
  explicit IntervalQuadrature(std::span<const double> times, std::size_t k = 0);
  /// Samples at the node times, oldest first.
  double operator()(std::span<const double> values) const;
  std::size_t nodes() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::size_t k_;
  double h_;
  std::array<double, 4> sigma_{};               // (t_k - t_j) / h
  std::array<std::array<double, 4>, 4> inv_{};  // monomial coefficients from node values
};

/// Weighted energy sum_i w_i ||f_i||^2 of a state (no dissipation).
double weighted_energy(const NsmState& s, const PhysicalParams& p);
/// Instantaneous dissipation rates (nu_-/eps0)||grad v_-||^2,
/// (nu_+/eps0)||grad v_+||^2, (alpha/eps0)||v_- - v_+||^2.
std::array<double, 3> dissipation_rates(const NsmState& s, const PhysicalParams& p);
/// d/dt of the weighted energy along the tangent `ds`:
/// sum_i 2 w_i <f_i, df_i>.
double energy_rate(const NsmState& s, const NsmState& ds, const PhysicalParams& p);

/// Energy summands of `s` combined with given accumulators; residual is
/// measured against `initial_total`.
EnergyReport energy_report(const NsmState& s, const PhysicalParams& p,
                           const DissipationAccumulators& acc, double initial_total);

/// Running energy audit. Between two calls of record() each mode's
/// dissipation density is integrated with IntervalQuadrature over the last
/// four records, so pure viscous and frictional decay is exact and the
/// oscillating exchange with E is integrated to fourth order. The first two
/// intervals are provisional (lower order) until the fourth record arrives;
/// they are then redone on four nodes and only then enter max_excess().
class EnergyAuditor {
 public:
  EnergyAuditor(const PhysicalParams& p, const NsmState& initial);

  /// Advance the accumulators to s.t and return the current report.
  EnergyReport record(const NsmState& s);
  const EnergyReport& last() const noexcept { return last_; }
  /// Largest (total + dissipated) / initial_total - 1 seen so far.
  double max_excess() const noexcept;
  double max_abs_relative_residual() const noexcept;

 private:
  PhysicalParams params_;
  DissipationAccumulators acc_;
  struct Record {
    double t;
    double total;  // weighted energy
    std::array<std::vector<double>, 3> density;
  };
  void account(const EnergyReport& r);
  std::deque<Record> history_;
  bool settled_ = false;
  std::vector<EnergyReport> provisional_;
  EnergyReport last_;
  double max_excess_ = 0.0;
  double max_abs_rel_ = 0.0;
};

/// Per-field divergence residuals (v_-, v_+, E, B).
std::array<double, 4> divergence_residual(const NsmState& s);

/// Running a priori norms of a trajectory.
struct AprioriReport {
  double t = 0.0;
  std::array<double, 2> v_sup_l2{};        ///< ||v_-+||_{L^inf_t L^2}
  std::array<double, 2> v_l2_h1dot{};      ///< ||v_-+||_{L^2_t Hdot^1}
  std::array<double, 2> v_l1_h{};          ///< ||v_-+||_{L^1_t H^{s1+1}}
  double e_sup_l2 = 0.0;
  double b_sup_l2 = 0.0;
  double c0 = 0.0;                         ///< sum of initial L^2 norms
  double bound_eb = 0.0;                   ///< C0 max(1, t)   (universal constant 1)
  double ratio_eb = 0.0;                   ///< (sup||E|| + sup||B||) / bound_eb
  double ratio_v = 0.0;                    ///< max_-+ ||v||_{L^1 H^{s1+1}} / (C0 max(1,t)^2)
  std::array<double, 2> xv{};              ///< X^v_t per species
  double xv_max = 0.0;
};

/// C0 = ||v_-,0|| + ||v_+,0|| + ||E0|| + ||B0|| (L^2).
double initial_data_c0(const NsmState& s);

/// Tracks the a priori quantities of a run. Time integrals use the left
/// endpoint rule at the cadence the monitor is fed.
class AprioriMonitor {
 public:
  /// Throws InvalidArgument unless 0 < s1 < 1.
  AprioriMonitor(const NsmState& initial, double s1);

  void record(const NsmState& s);
  /// Report at the last recorded time. Throws InvalidArgument when nothing
  /// has been recorded.
  AprioriReport report() const;
  /// Ratio series recorded so far (one entry per record()).
  const std::vector<double>& ratio_eb_series() const noexcept { return ratio_eb_; }
  const std::vector<double>& ratio_v_series() const noexcept { return ratio_v_; }
  const std::vector<double>& xv_series() const noexcept { return xv_; }

 private:
  struct SpeciesSample {
    double h1 = 0.0;    // ||v||_{Hdot^1}
    double hs = 0.0;    // ||v||_{H^{s1+1}}
    double h32 = 0.0;   // ||v||_{Hdot^{3/2}}
  };

  double s1_;
  double c0_;
  bool have_last_ = false;
  double last_t_ = 0.0;
  std::array<SpeciesSample, 2> last_{};
  std::array<double, 2> h1_sq_integral_{};
  std::array<double, 2> hs_integral_{};
  std::array<double, 2> h32_sq_integral_{};
  std::array<double, 2> sup_half_{};
  AprioriReport current_;
  std::vector<double> ratio_eb_, ratio_v_, xv_;
};

/// apriori_report over a sampled trajectory (uniform or not); throws
/// InvalidArgument on an empty history.
AprioriReport apriori_report(const std::vector<NsmState>& history, double s1);

/// Column names of the run time series; depends only on dimension and
/// formulation.
std::vector<std::string> series_columns(int dimension, const Formulation& form);

/// Observer collecting energy, a priori and divergence diagnostics of a run.
/// Energy accumulators advance every step; rows are emitted on sampled steps.
class DiagnosticsCollector : public Observer<NsmState> {
 public:
  DiagnosticsCollector(const PhysicalParams& p, const Formulation& form, const NsmState& initial,
                       double s1);

  void on_step(const NsmState& s, long step, bool sampled) override;

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  const EnergyAuditor& energy() const noexcept { return energy_; }
  const AprioriMonitor& apriori() const noexcept { return apriori_; }
  /// Worst divergence residual seen over all sampled states.
  double max_divergence_residual() const noexcept { return max_div_; }

 private:
  int dimension_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  EnergyAuditor energy_;
  AprioriMonitor apriori_;
  double max_div_ = 0.0;
};

}  // namespace nsm
