#include "nsm/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "nsm/error.hpp"
#include "nsm/spectral_ops.hpp"

namespace nsm {

namespace {

std::array<double, 4> energy_weights(const PhysicalParams& p) {
  return {p.n * p.m_minus / (2.0 * p.eps0), p.n * p.m_plus / (2.0 * p.eps0), 0.5,
          1.0 / (2.0 * p.eps0 * p.mu0)};
}

double sq(double x) { return x * x; }

// Per-mode densities of the three dissipation rates; each sums to the
// matching entry of dissipation_rates().
std::array<std::vector<double>, 3> dissipation_density(const NsmState& s, const PhysicalParams& p) {
  const Grid& g = s.grid();
  const auto k2 = g.k2();
  std::array<std::vector<double>, 3> d;
  for (auto& v : d) v.assign(g.size(), 0.0);
  for (std::size_t m = 0; m < g.size(); ++m) {
    double am = 0.0, ap = 0.0, slip = 0.0;
    for (int c = 0; c < 3; ++c) {
      am += std::norm(s.v_minus().at(c, m));
      ap += std::norm(s.v_plus().at(c, m));
      slip += std::norm(s.v_minus().at(c, m) - s.v_plus().at(c, m));
    }
    d[0][m] = p.nu_minus / p.eps0 * k2[m] * am;
    d[1][m] = p.nu_plus / p.eps0 * k2[m] * ap;
    d[2][m] = p.alpha / p.eps0 * slip;
  }
  return d;
}

}  // namespace

namespace {

// int_0^1 u^p e^{xu} du
double exp_moment(int p, double x) {
  if (std::abs(x) < 0.5) {
    double term = 1.0, sum = 0.0;
    for (int n = 0; n < 40; ++n) {
      const double add = term / (n + p + 1);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
      term *= x / (n + 1);
    }
    return sum;
  }
  const double ex = std::exp(x);
  double I = std::expm1(x) / x;
  for (int q = 1; q <= p; ++q) I = (ex - q * I) / x;
  return I;
}

}  // namespace

IntervalQuadrature::IntervalQuadrature(std::span<const double> times, std::size_t k)
    : n_(times.size()), k_(k == 0 ? times.size() - 1 : k) {
  if (n_ < 2 || n_ > 4) throw InvalidArgument("interval quadrature needs 2 to 4 nodes");
  if (k_ >= n_) throw InvalidArgument("quadrature interval out of range");
  for (std::size_t j = 1; j < n_; ++j) {
    if (!(times[j] > times[j - 1])) throw InvalidArgument("quadrature nodes must increase");
  }
  h_ = times[k_] - times[k_ - 1];
  for (std::size_t j = 0; j < n_; ++j) sigma_[j] = (times[k_] - times[j]) / h_;
  // invert the Vandermonde matrix V[j][p] = sigma_j^p by Gauss-Jordan
  std::array<std::array<double, 8>, 4> a{};
  for (std::size_t j = 0; j < n_; ++j) {
    double pw = 1.0;
    for (std::size_t p = 0; p < n_; ++p, pw *= sigma_[j]) a[j][p] = pw;
    a[j][n_ + j] = 1.0;
  }
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n_; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    const double d = a[c][c];
    for (auto& x : a[c]) x /= d;
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t k = 0; k < 2 * n_; ++k) a[r][k] -= f * a[c][k];
    }
  }
  // inv_[p][j]: coefficient of sigma^p contributed by node j
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t j = 0; j < n_; ++j) inv_[p][j] = a[p][n_ + j];
  }
}

double IntervalQuadrature::operator()(std::span<const double> f) const {
  const double a = f[k_ - 1], b = f[k_];
  double x = 0.0;
  if (a > 0.0 && b > 0.0) {
    x = std::log(a / b);
  } else if (a == 0.0 && b == 0.0) {
    bool all_zero = true;
    for (std::size_t j = 0; j < n_; ++j) all_zero = all_zero && f[j] == 0.0;
    if (all_zero) return 0.0;
  }
  // f(sigma) = e^{x sigma} P(sigma) with sigma = (t_k - t) / h
  std::array<double, 4> g{};
  for (std::size_t j = 0; j < n_; ++j) g[j] = f[j] * std::exp(-x * sigma_[j]);
  double sum = 0.0;
  for (std::size_t p = 0; p < n_; ++p) {
    double c = 0.0;
    for (std::size_t j = 0; j < n_; ++j) c += inv_[p][j] * g[j];
    sum += c * exp_moment(static_cast<int>(p), x);
  }
  return h_ * sum;
}

double weighted_energy(const NsmState& s, const PhysicalParams& p) {
  const auto w = energy_weights(p);
  double e = 0.0;
  for (std::size_t i = 0; i < 4; ++i) e += w[i] * inner(s.fields[i], s.fields[i]);
  return e;
}

std::array<double, 3> dissipation_rates(const NsmState& s, const PhysicalParams& p) {
  return {p.nu_minus / p.eps0 * sq(sobolev_norm(s.v_minus(), 1.0, true)),
          p.nu_plus / p.eps0 * sq(sobolev_norm(s.v_plus(), 1.0, true)),
          p.alpha / p.eps0 * sq(l2_norm(s.v_minus() - s.v_plus()))};
}

double energy_rate(const NsmState& s, const NsmState& ds, const PhysicalParams& p) {
  const auto w = energy_weights(p);
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i) r += 2.0 * w[i] * inner(s.fields[i], ds.fields[i]);
  return r;
}

EnergyReport energy_report(const NsmState& s, const PhysicalParams& p,
                           const DissipationAccumulators& acc, double initial_total) {
  const auto w = energy_weights(p);
  EnergyReport r;
  r.t = s.t;
  r.kinetic_minus = w[0] * inner(s.v_minus(), s.v_minus());
  r.kinetic_plus = w[1] * inner(s.v_plus(), s.v_plus());
  r.electric = w[2] * inner(s.E(), s.E());
  r.magnetic = w[3] * inner(s.B(), s.B());
  r.viscous_minus = acc.viscous_minus;
  r.viscous_plus = acc.viscous_plus;
  r.friction = acc.friction;
  r.initial_total = initial_total;
  r.residual = (r.total() + r.dissipated()) - initial_total;
  return r;
}

EnergyAuditor::EnergyAuditor(const PhysicalParams& p, const NsmState& initial)
    : params_(p.validated()) {
  const double e0 = weighted_energy(initial, params_);
  history_.push_back({initial.t, e0, dissipation_density(initial, params_)});
  last_ = energy_report(initial, params_, acc_, e0);
}

namespace {

std::array<double, 3> interval_increment(const IntervalQuadrature& quad,
                                         std::span<const std::array<std::vector<double>, 3>* const> d) {
  std::array<double, 3> inc{};
  std::array<double, 4> f{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t m = 0; m < (*d.back())[i].size(); ++m) {
      for (std::size_t j = 0; j < d.size(); ++j) f[j] = (*d[j])[i][m];
      inc[i] += quad(std::span<const double>(f.data(), d.size()));
    }
  }
  return inc;
}

}  // namespace

void EnergyAuditor::account(const EnergyReport& r) {
  if (!(r.initial_total > 0.0)) return;
  max_excess_ = std::max(max_excess_, r.relative_residual());
  max_abs_rel_ = std::max(max_abs_rel_, std::abs(r.relative_residual()));
}

EnergyReport EnergyAuditor::record(const NsmState& s) {
  if (!(s.t > history_.back().t)) {
    last_ = energy_report(s, params_, acc_, last_.initial_total);
    if (settled_) account(last_);
    return last_;
  }
  history_.push_back({s.t, weighted_energy(s, params_), dissipation_density(s, params_)});
  if (history_.size() > 4) history_.pop_front();
  const std::size_t n = history_.size();
  std::array<double, 4> times{};
  std::array<const std::array<std::vector<double>, 3>*, 4> dens{};
  for (std::size_t j = 0; j < n; ++j) {
    times[j] = history_[j].t;
    dens[j] = &history_[j].density;
  }
  const std::span<const double> ts(times.data(), n);
  const std::span<const std::array<std::vector<double>, 3>* const> ds(dens.data(), n);

  if (!settled_ && n == 4) {
    // redo the provisional start on the full stencil
    acc_ = {};
    provisional_.clear();
    for (std::size_t k = 1; k < 4; ++k) {
      const auto inc = interval_increment(IntervalQuadrature(ts, k), ds);
      acc_.viscous_minus += inc[0];
      acc_.viscous_plus += inc[1];
      acc_.friction += inc[2];
      if (k < 3) {
        EnergyReport r;
        r.t = history_[k].t;
        r.initial_total = last_.initial_total;
        r.viscous_minus = acc_.viscous_minus;
        r.viscous_plus = acc_.viscous_plus;
        r.friction = acc_.friction;
        r.residual = history_[k].total + r.dissipated() - r.initial_total;
        account(r);
      }
    }
    settled_ = true;
  } else {
    const auto inc = interval_increment(IntervalQuadrature(ts), ds);
    acc_.viscous_minus += inc[0];
    acc_.viscous_plus += inc[1];
    acc_.friction += inc[2];
  }
  last_ = energy_report(s, params_, acc_, last_.initial_total);
  if (settled_) {
    account(last_);
  } else {
    provisional_.push_back(last_);
  }
  return last_;
}

double EnergyAuditor::max_excess() const noexcept {
  double m = max_excess_;
  for (const auto& r : provisional_) m = std::max(m, r.initial_total > 0.0 ? r.relative_residual() : 0.0);
  return m;
}

double EnergyAuditor::max_abs_relative_residual() const noexcept {
  double m = max_abs_rel_;
  for (const auto& r : provisional_) {
    m = std::max(m, r.initial_total > 0.0 ? std::abs(r.relative_residual()) : 0.0);
  }
  return m;
}

std::array<double, 4> divergence_residual(const NsmState& s) {
  return {divergence_residual(s.v_minus()), divergence_residual(s.v_plus()),
          divergence_residual(s.E()), divergence_residual(s.B())};
}

double initial_data_c0(const NsmState& s) {
  return l2_norm(s.v_minus()) + l2_norm(s.v_plus()) + l2_norm(s.E()) + l2_norm(s.B());
}

AprioriMonitor::AprioriMonitor(const NsmState& initial, double s1)
    : s1_(s1), c0_(initial_data_c0(initial)) {
  if (!(s1 > 0.0 && s1 < 1.0)) throw InvalidArgument("s1 must lie in (0, 1)");
  current_.c0 = c0_;
}

void AprioriMonitor::record(const NsmState& s) {
  const std::array<const SpectralField*, 2> v{&s.v_minus(), &s.v_plus()};
  std::array<SpeciesSample, 2> now;
  const double h = have_last_ ? s.t - last_t_ : 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    now[i].h1 = sobolev_norm(*v[i], 1.0, true);
    now[i].hs = sobolev_norm(*v[i], s1_ + 1.0, false);
    now[i].h32 = sobolev_norm(*v[i], 1.5, true);
    if (have_last_) {
      h1_sq_integral_[i] += sq(last_[i].h1) * h;
      hs_integral_[i] += last_[i].hs * h;
      h32_sq_integral_[i] += sq(last_[i].h32) * h;
    }
    sup_half_[i] = std::max(sup_half_[i], sobolev_norm(*v[i], 0.5, true));
    current_.v_sup_l2[i] = std::max(current_.v_sup_l2[i], l2_norm(*v[i]));
    current_.v_l2_h1dot[i] = std::sqrt(h1_sq_integral_[i]);
    current_.v_l1_h[i] = hs_integral_[i];
    current_.xv[i] = std::max(sup_half_[i], std::sqrt(h32_sq_integral_[i]));
  }
  last_ = now;
  last_t_ = s.t;
  have_last_ = true;

  current_.t = s.t;
  current_.e_sup_l2 = std::max(current_.e_sup_l2, l2_norm(s.E()));
  current_.b_sup_l2 = std::max(current_.b_sup_l2, l2_norm(s.B()));
  const double scale = std::max(1.0, s.t);
  current_.bound_eb = c0_ * scale;
  current_.ratio_eb = c0_ > 0.0 ? (current_.e_sup_l2 + current_.b_sup_l2) / current_.bound_eb : 0.0;
  current_.ratio_v =
      c0_ > 0.0 ? std::max(current_.v_l1_h[0], current_.v_l1_h[1]) / (c0_ * scale * scale) : 0.0;
  current_.xv_max = std::max(current_.xv[0], current_.xv[1]);
  ratio_eb_.push_back(current_.ratio_eb);
  ratio_v_.push_back(current_.ratio_v);
  xv_.push_back(current_.xv_max);
}

AprioriReport AprioriMonitor::report() const {
  if (!have_last_) throw InvalidArgument("a priori report needs a nonempty history");
  return current_;
}

AprioriReport apriori_report(const std::vector<NsmState>& history, double s1) {
  if (history.empty()) throw InvalidArgument("a priori report needs a nonempty history");
  AprioriMonitor m(history.front(), s1);
  for (const auto& s : history) m.record(s);
  return m.report();
}

std::vector<std::string> series_columns(int dimension, const Formulation&) {
  std::vector<std::string> c = {
      "t",           "v_minus_L2",     "v_minus_H1dot", "v_plus_L2",      "v_plus_H1dot",
      "E_L2",        "B_L2",           "kinetic_minus", "kinetic_plus",   "electric",
      "magnetic",    "viscous_minus",  "viscous_plus",  "friction",       "energy_residual",
      "div_v_minus", "div_v_plus",     "div_E",         "div_B"};
  if (dimension == 3) {
    c.push_back("xv");
  } else {
    c.push_back("ratio_eb");
    c.push_back("ratio_v");
  }
  return c;
}

DiagnosticsCollector::DiagnosticsCollector(const PhysicalParams& p, const Formulation& form,
                                           const NsmState& initial, double s1)
    : dimension_(initial.grid().dimension()),
      columns_(series_columns(dimension_, form)),
      energy_(p, initial),
      apriori_(initial, s1) {}

void DiagnosticsCollector::on_step(const NsmState& s, long step, bool sampled) {
  const EnergyReport e = step == 0 ? energy_.last() : energy_.record(s);
  apriori_.record(s);
  if (!sampled) return;
  const auto div = divergence_residual(s);
  for (double d : div) max_div_ = std::max(max_div_, d);
  const AprioriReport a = apriori_.report();
  std::vector<double> row = {s.t,
                             l2_norm(s.v_minus()),
                             sobolev_norm(s.v_minus(), 1.0, true),
                             l2_norm(s.v_plus()),
                             sobolev_norm(s.v_plus(), 1.0, true),
                             l2_norm(s.E()),
                             l2_norm(s.B()),
                             e.kinetic_minus,
                             e.kinetic_plus,
                             e.electric,
                             e.magnetic,
                             e.viscous_minus,
                             e.viscous_plus,
                             e.friction,
                             e.residual,
                             div[0],
                             div[1],
                             div[2],
                             div[3]};
  if (dimension_ == 3) {
    row.push_back(a.xv_max);
  } else {
    row.push_back(a.ratio_eb);
    row.push_back(a.ratio_v);
  }
  rows_.push_back(std::move(row));
}

}  // namespace nsm
