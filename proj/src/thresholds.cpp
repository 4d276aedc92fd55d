#include "nsm/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsm/error.hpp"
#include "nsm/lp_norms.hpp"
#include "nsm/spectral_ops.hpp"

namespace nsm {

ThresholdConstants compute_constants(const PhysicalParams& params, double c) {
  if (!(c > 0.0)) throw InvalidArgument("universal factor c must be > 0");
  const PhysicalParams p = params.validated();
  if (!(p.nu_minus > 0.0 && p.nu_plus > 0.0)) {
    throw InvalidArgument("threshold constants need nu_minus > 0 and nu_plus > 0");
  }
  if (!(p.alpha > 0.0)) throw InvalidArgument("threshold constants need alpha > 0");

  ThresholdConstants k;
  k.c = c;
  const double e_minus = p.n * p.m_minus / (2.0 * p.eps0);
  const double e_plus = p.n * p.m_plus / (2.0 * p.eps0);
  const double e_mag = 1.0 / (2.0 * p.eps0 * p.mu0);
  k.lambda2 = std::max({e_minus, e_plus, 0.5, e_mag});
  k.lambda1 = std::min({e_minus, e_plus, 0.5, e_mag, p.nu_minus / p.eps0, p.nu_plus / p.eps0,
                        p.alpha / p.eps0});

  const double root = std::sqrt(k.lambda2 / k.lambda1);
  double best = 0.0;
  for (const auto& [m, nu] : {std::pair{p.m_minus, p.nu_minus}, std::pair{p.m_plus, p.nu_plus}}) {
    const double ratio = p.n * m / nu;
    best = std::max({best, std::sqrt(ratio), root * std::pow(ratio, 0.75) * p.e / p.m_minus,
                     root * std::pow(ratio, 0.75) * p.e * p.Z / p.m_plus,
                     root * p.alpha / (std::pow(nu, 0.75) * std::pow(p.n * m, 0.25)),
                     p.alpha / nu, ratio});
  }
  k.C = c * best;
  return k;
}

InitialNorms initial_norms(const NsmState& s) {
  InitialNorms n;
  n.v_minus_h = sobolev_norm(s.v_minus(), 0.5, false);
  n.v_plus_h = sobolev_norm(s.v_plus(), 0.5, false);
  n.v_minus_hdot = sobolev_norm(s.v_minus(), 0.5, true);
  n.v_plus_hdot = sobolev_norm(s.v_plus(), 0.5, true);
  n.v_minus_l2 = l2_norm(s.v_minus());
  n.v_plus_l2 = l2_norm(s.v_plus());
  n.e_l2 = l2_norm(s.E());
  n.b_l2 = l2_norm(s.B());
  return n;
}

std::string to_string(ThresholdCase c) {
  return c == ThresholdCase::small_c ? "4C<1" : "4C>=1";
}

ThresholdReport classify(const ThresholdConstants& k, const InitialNorms& norms) {
  ThresholdReport r;
  r.constants = k;
  r.combined_norm = norms.combined();
  r.combined_norm_homogeneous = norms.combined_homogeneous();
  r.c0 = norms.c0();
  const double C = k.C;
  const double C0 = r.c0;
  const double inf = std::numeric_limits<double>::infinity();

  if (4.0 * C < 1.0) {
    r.regime = ThresholdCase::small_c;
    r.threshold = std::min((1.0 - 4.0 * C) / C, 1.0);
    r.xv_bound = 1.0;
    // T^{3/4} = (1 - C C0 - 2C) / (3 C C0) under C0 <= (1 - 4C)/C
    if (C0 == 0.0) {
      r.t_star = inf;
    } else if (C0 <= (1.0 - 4.0 * C) / C) {
      r.t_star = std::pow((1.0 - C * C0 - 2.0 * C) / (3.0 * C * C0), 4.0 / 3.0);
    }
  } else {
    r.regime = ThresholdCase::large_c;
    r.threshold = 1.0 / (8.0 * C);
    r.xv_bound = (1.0 - C * C0) / (4.0 * C);
    if (C0 == 0.0) {
      r.t_star = inf;
    } else if (C0 <= 1.0 / (2.0 * C)) {
      r.t_star = std::pow(std::pow(1.0 - C * C0, 2) / (24.0 * C * C * C0), 4.0 / 3.0);
    }
  }
  r.satisfied = r.combined_norm <= r.threshold;
  return r;
}

}  // namespace nsm
