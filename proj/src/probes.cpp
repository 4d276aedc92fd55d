#include "nsm/probes.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "nsm/dynamics.hpp"
#include "nsm/error.hpp"
#include "nsm/integrator.hpp"
#include "nsm/spectral_ops.hpp"

namespace nsm {

void RatioStudy::add(double lhs, double rhs) {
  if (!(rhs >= kMinRhs)) {
    ++discarded;
    return;
  }
  samples.push_back({lhs, rhs, lhs / rhs});
}

void RatioStudy::require_nondegenerate() const {
  if (samples.empty()) {
    throw InvalidArgument("degenerate corpus for " + tag + ": every right-hand side is below " +
                          std::to_string(kMinRhs));
  }
}

double RatioStudy::max_ratio() const {
  require_nondegenerate();
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.ratio);
  return m;
}

double RatioStudy::median_ratio() const {
  require_nondegenerate();
  std::vector<double> r;
  r.reserve(samples.size());
  for (const auto& s : samples) r.push_back(s.ratio);
  std::sort(r.begin(), r.end());
  const std::size_t h = r.size() / 2;
  return r.size() % 2 ? r[h] : 0.5 * (r[h - 1] + r[h]);
}

namespace {

void zero_mean(SpectralField& f) {
  for (int c = 0; c < f.components(); ++c) f.at(c, 0) = 0.0;
}

// Homogeneous H^s norm of the tensor product u (x) v with its mean removed.
// Row i is the vector u_i v, and the squared norm is the sum over rows.
double tensor_product_norm(const SpectralField& u, const SpectralField& v, double s) {
  const PhysicalField pu = to_physical(u);
  const PhysicalField pv = to_physical(v);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    PhysicalField row(u.grid(), 3);
    auto a = pu.component(i);
    for (int j = 0; j < 3; ++j) {
      auto dst = row.component(j);
      auto b = pv.component(j);
      for (std::size_t m = 0; m < dst.size(); ++m) dst[m] = a[m] * b[m];
    }
    SpectralField f = to_spectral(row);
    zero_mean(f);
    const double n = sobolev_norm(f, s, true);
    sum += n * n;
  }
  return std::sqrt(sum);
}

// Graded nodes on [0, T]: Gauss-Legendre on [T 2^{-j-1}, T 2^{-j}], so
// integrands decaying on any scale down to T 2^{-40} are resolved.
struct TimeRule {
  std::vector<double> t, w;
};

TimeRule graded_rule(double horizon) {
  using G = boost::math::quadrature::gauss<double, 8>;
  const auto x = G::abscissa();
  const auto wt = G::weights();
  TimeRule r;
  auto interval = [&](double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.t.push_back(c - h * x[i]);
      r.w.push_back(h * wt[i]);
      r.t.push_back(c + h * x[i]);
      r.w.push_back(h * wt[i]);
    }
  };
  constexpr int levels = 40;
  interval(0.0, std::ldexp(horizon, -levels));
  for (int j = levels; j >= 1; --j) interval(std::ldexp(horizon, -j), std::ldexp(horizon, -j + 1));
  return r;
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

SpectralField shell_field(const Grid& g, std::uint64_t seed, int q) {
  RandomFieldSpec spec;
  spec.seed = seed;
  spec.band = std::ldexp(1.0, q + 1);
  spec.exponent = 0.0;
  spec.dealiased = false;
  SpectralField f = DyadicBlocks::decompose(random_field(g, spec), true).block(q);
  const double n = l2_norm(f);
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

}  // namespace

// ---------------------------------------------------------------- products

ProductTag parse_product_tag(const std::string& s) {
  if (s == "2.1" || s == "2.1-form") return ProductTag::est1;
  if (s == "2.3" || s == "2.3-form") return ProductTag::est3;
  if (s == "PE1") return ProductTag::pe1;
  if (s == "PE2") return ProductTag::pe2;
  if (s == "PE3") return ProductTag::pe3;
  if (s == "PE4") return ProductTag::pe4;
  throw InvalidArgument("unknown product estimate tag '" + s + "'");
}

std::string to_string(ProductTag t) {
  switch (t) {
    case ProductTag::est1: return "2.1-form";
    case ProductTag::est3: return "2.3-form";
    case ProductTag::pe1: return "PE1";
    case ProductTag::pe2: return "PE2";
    case ProductTag::pe3: return "PE3";
    case ProductTag::pe4: return "PE4";
  }
  return "unknown";
}

int product_dimension(ProductTag t) {
  return t == ProductTag::est1 || t == ProductTag::est3 ? 2 : 3;
}

ProductCorpus default_product_corpus(ProductTag t, int n) {
  ProductCorpus c;
  c.n = n;
  if (product_dimension(t) == 3) {
    // band 3 keeps products of pairs unaliased down to N = 16
    c.count = 40;
    c.band = 3.0;
  }
  return c;
}

Trajectory heat_trajectory(const SpectralField& u0, double mu, double horizon, int count) {
  if (count < 1 || !(horizon > 0.0)) throw InvalidArgument("trajectory needs count >= 1 and horizon > 0");
  Trajectory tr;
  tr.dt = horizon / count;
  const auto k2 = u0.grid().k2();
  for (int i = 0; i < count; ++i) {
    SpectralField f = u0;
    const double t = i * tr.dt;
    for (int c = 0; c < f.components(); ++c) {
      auto d = f.component(c);
      for (std::size_t m = 0; m < d.size(); ++m) d[m] *= std::exp(-mu * k2[m] * t);
    }
    tr.samples.push_back(std::move(f));
  }
  return tr;
}

SpectralField product_advection(const SpectralField& u, const SpectralField& v) {
  const PhysicalField pu = to_physical(u);
  const GradientSamples grad = physical_gradient(v);
  const int dims = u.grid().dimension();
  PhysicalField out(u.grid(), 3);
  for (int c = 0; c < 3; ++c) {
    auto dst = out.component(c);
    for (int j = 0; j < dims; ++j) {
      auto uj = pu.component(j);
      auto g = grad[static_cast<std::size_t>(j)].component(c);
      for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += uj[m] * g[m];
    }
  }
  return to_spectral(out);
}

SpectralField product_cross(const SpectralField& a, const SpectralField& b) {
  const PhysicalField pa = to_physical(a);
  const PhysicalField pb = to_physical(b);
  PhysicalField out(a.grid(), 3);
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    auto dst = out.component(c);
    auto ai = pa.component(i), aj = pa.component(j), bi = pb.component(i), bj = pb.component(j);
    for (std::size_t m = 0; m < dst.size(); ++m) dst[m] = ai[m] * bj[m] - aj[m] * bi[m];
  }
  return to_spectral(out);
}

std::pair<double, double> est1_terms(const SpectralField& u, const SpectralField& v, double s) {
  const int d = u.grid().dimension();
  const double lhs = tensor_product_norm(u, v, s - 0.5 * d);
  return {lhs, sobolev_norm(u, s, false) * l2_norm(v)};
}

std::pair<double, double> est3_terms(const SpectralField& u, const SpectralField& v, double s) {
  const double lhs = sobolev_norm(product_advection(u, v), s - 1.0, false);
  const double rhs = l2_norm(u) * sobolev_norm(v, 1.0, false) +
                     sobolev_norm(u, 1.0, false) * sobolev_norm(v, 1.0, true);
  return {lhs, rhs};
}

std::pair<double, double> space_time_terms(ProductTag t, const Trajectory& u, const Trajectory& v,
                                           double horizon) {
  if (u.samples.size() != v.samples.size() || u.samples.empty()) {
    throw InvalidArgument("trajectories must be nonempty and share their sampling");
  }
  const double dt = u.dt;
  auto norms = [&](const Trajectory& tr, double s) {
    std::vector<double> out;
    for (const auto& f : tr.samples) out.push_back(s == 0.0 ? l2_norm(f) : sobolev_norm(f, s, true));
    return out;
  };
  std::vector<double> lhs_values;
  BlockNormSeries blocks{dt, true, {}};
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    SpectralField p = t == ProductTag::pe1 || t == ProductTag::pe2
                          ? product_advection(u.samples[i], v.samples[i])
                          : product_cross(u.samples[i], v.samples[i]);
    // mean-free by construction; drop the roundoff residue
    zero_mean(p);
    if (t == ProductTag::pe2) {
      blocks.push(DyadicBlocks::decompose(p, true));
    } else {
      lhs_values.push_back(sobolev_norm(p, -0.5, true));
    }
  }
  const double inf = kTimeInfinity;
  switch (t) {
    case ProductTag::pe1:
      return {time_norm(lhs_values, dt, 2.0),
              time_norm(norms(u, 0.5), dt, inf) * time_norm(norms(v, 1.5), dt, 2.0)};
    case ProductTag::pe2:
      return {chemin_lerner_norm(blocks, 0.0, 4.0 / 3.0),
              std::sqrt(time_norm(norms(u, 0.5), dt, inf) * time_norm(norms(u, 1.5), dt, 2.0)) *
                  time_norm(norms(v, 1.5), dt, 2.0)};
    case ProductTag::pe3:
      return {time_norm(lhs_values, dt, 2.0),
              time_norm(norms(u, 1.0), dt, 2.0) * time_norm(norms(v, 0.0), dt, inf)};
    case ProductTag::pe4:
      return {time_norm(lhs_values, dt, 2.0),
              std::pow(horizon, 0.25) *
                  std::sqrt(time_norm(norms(u, 0.5), dt, inf) * time_norm(norms(u, 1.5), dt, 2.0)) *
                  time_norm(norms(v, 0.0), dt, inf)};
    default:
      break;
  }
  throw InvalidArgument("space_time_terms needs a PE tag");
}

RatioStudy probe_product_estimate(ProductTag t, const ProductCorpus& corpus) {
  if (corpus.count < 1) throw InvalidArgument("product corpus needs count >= 1");
  const int d = product_dimension(t);
  const Grid g(d, corpus.n);
  RatioStudy study;
  study.tag = to_string(t);
  study.corpus = {d == 2 ? "random solenoidal |k|^-2 pairs" : "heat-decaying random solenoidal pairs",
                  d, corpus.n, corpus.count};
  // Odd k1 for the first factor and even k1 for the second keep the
  // pointwise products mean-free.
  RandomFieldSpec su, sv;
  su.band = sv.band = corpus.band;
  su.k1_parity = 1;
  sv.k1_parity = 0;
  for (int i = 0; i < corpus.count; ++i) {
    su.seed = corpus.seed + 2 * static_cast<std::uint64_t>(i);
    sv.seed = su.seed + 1;
    const SpectralField u = random_field(g, su);
    const SpectralField v = random_field(g, sv);
    std::pair<double, double> r;
    if (t == ProductTag::est1) {
      r = est1_terms(u, v, corpus.s);
    } else if (t == ProductTag::est3) {
      r = est3_terms(u, v, corpus.s);
    } else {
      r = space_time_terms(t, heat_trajectory(u, corpus.mu, corpus.horizon, corpus.time_samples),
                           heat_trajectory(v, corpus.mu, corpus.horizon, corpus.time_samples),
                           corpus.horizon);
    }
    study.add(r.first, r.second);
  }
  study.require_nondegenerate();
  return study;
}

// ------------------------------------------------------------ heat semigroup

double heat_mode(double u0, double f, double lambda, double t) {
  const double decay = std::exp(-lambda * t);
  const double duhamel = lambda > 0.0 ? -std::expm1(-lambda * t) / lambda : t;
  return decay * u0 + duhamel * f;
}

namespace {

void validate(const HeatProbeConfig& c) {
  if (!(c.r1 >= 1.0)) throw InvalidArgument("heat probe needs r1 >= 1");
  if (!(c.p >= c.r1)) throw InvalidArgument("heat probe needs p >= r1");
  if (!(c.mu > 0.0)) throw InvalidArgument("heat probe needs mu > 0");
  if (!(c.a >= 0.0)) throw InvalidArgument("heat probe needs a >= 0");
  if (!(c.horizon > 0.0)) throw InvalidArgument("heat probe needs a positive horizon");
  if (c.count < 1 || c.q_max < 0) throw InvalidArgument("heat probe needs count >= 1 and q_max >= 0");
}

struct HeatTerms {
  double lhs, rhs, duhamel_gap;
};

HeatTerms heat_terms(const SpectralField& u0, const SpectralField& f, const HeatProbeConfig& c,
                     const TimeRule& rule) {
  struct Mode {
    double a, b, ff, lambda, k2;
    int q;
  };
  const auto k2 = u0.grid().k2();
  std::vector<Mode> modes;
  int q_lo = std::numeric_limits<int>::max(), q_hi = std::numeric_limits<int>::min();
  for (std::size_t m = 0; m < u0.modes(); ++m) {
    if (k2[m] == 0.0) continue;
    double a = 0.0, b = 0.0, ff = 0.0;
    for (int comp = 0; comp < 3; ++comp) {
      a += std::norm(u0.at(comp, m));
      b += std::real(u0.at(comp, m) * std::conj(f.at(comp, m)));
      ff += std::norm(f.at(comp, m));
    }
    if (a == 0.0 && ff == 0.0) continue;
    const int q = dyadic_index(k2[m]);
    q_lo = std::min(q_lo, q);
    q_hi = std::max(q_hi, q);
    modes.push_back({a, b, ff, c.a + c.mu * k2[m], k2[m], q});
  }
  if (modes.empty()) return {0.0, 0.0, 0.0};
  const std::size_t nq = static_cast<std::size_t>(q_hi - q_lo + 1);

  // time samples: quadrature nodes, plus both endpoints for the sups
  std::vector<double> times = rule.t;
  times.push_back(0.0);
  times.push_back(c.horizon);
  const std::size_t nodes = rule.t.size();

  double sup_hs = 0.0, gap = 0.0;
  std::vector<double> block_lp(nq, 0.0);
  std::vector<double> block_sq(nq);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    std::fill(block_sq.begin(), block_sq.end(), 0.0);
    double hs = 0.0;
    for (const Mode& m : modes) {
      const double e = std::exp(-m.lambda * t);
      const double g = -std::expm1(-m.lambda * t) / m.lambda;
      const double amp2 = e * e * m.a + 2.0 * e * g * m.b + g * g * m.ff;
      block_sq[static_cast<std::size_t>(m.q - q_lo)] += amp2;
      hs += std::pow(m.k2, c.s) * amp2;
    }
    sup_hs = std::max(sup_hs, std::sqrt(hs));
    for (std::size_t q = 0; q < nq; ++q) {
      const double b = std::sqrt(block_sq[q]);
      if (std::isinf(c.p)) {
        block_lp[q] = std::max(block_lp[q], b);
      } else if (i < nodes) {
        block_lp[q] += rule.w[i] * std::pow(b, c.p);
      }
    }
  }
  double cl = 0.0;
  for (std::size_t q = 0; q < nq; ++q) {
    const double norm = std::isinf(c.p) ? block_lp[q] : std::pow(block_lp[q], 1.0 / c.p);
    const int qq = q_lo + static_cast<int>(q);
    cl += std::pow(std::ldexp(1.0, qq), 2.0 * (c.s + 2.0 * inv(c.p))) * norm * norm;
  }
  const double lhs = sup_hs + std::sqrt(cl);

  // forcing constant in time: ||Delta_q f||_{L^r1_T} = T^{1/r1} ||Delta_q f||
  const double sigma = c.s - 2.0 + 2.0 * inv(c.r1);
  double u0_hs = 0.0;
  std::vector<double> f_sq(nq, 0.0);
  for (const Mode& m : modes) {
    u0_hs += std::pow(m.k2, c.s) * m.a;
    f_sq[static_cast<std::size_t>(m.q - q_lo)] += m.ff;
  }
  double f_norm = 0.0;
  for (std::size_t q = 0; q < nq; ++q) {
    f_norm += std::pow(std::ldexp(1.0, q_lo + static_cast<int>(q)), 2.0 * sigma) * f_sq[q];
  }
  f_norm = std::pow(c.horizon, inv(c.r1)) * std::sqrt(f_norm);
  const double rhs = std::pow(c.mu, -inv(c.p)) * std::sqrt(u0_hs) +
                     std::pow(c.mu, -1.0 - inv(c.p) + inv(c.r1)) * f_norm;

  // Duhamel integral int_0^T exp(-lambda tau) dtau by the same rule
  for (const Mode& m : modes) {
    if (m.ff == 0.0) continue;
    double quad = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) quad += rule.w[i] * std::exp(-m.lambda * rule.t[i]);
    const double exact = heat_mode(0.0, 1.0, m.lambda, c.horizon);
    gap = std::max(gap, std::abs(quad - exact) / exact);
  }
  return {lhs, rhs, gap};
}

}  // namespace

RatioStudy probe_heat_semigroup(const HeatProbeConfig& cfg) {
  validate(cfg);
  const Grid g(2, cfg.n);
  const TimeRule rule = graded_rule(cfg.horizon);
  RatioStudy study;
  study.tag = "2.1-heat";
  study.corpus = {"single-shell solenoidal data with shell forcing", 2, cfg.n, cfg.count};
  static constexpr double forcing_levels[] = {0.0, 0.5, 2.0};
  double gap = 0.0;
  for (int i = 0; i < cfg.count; ++i) {
    const int q = i % (cfg.q_max + 1);
    const std::uint64_t seed = cfg.seed + 2 * static_cast<std::uint64_t>(i);
    const SpectralField u0 = shell_field(g, seed, q);
    // forcing scaled like mu |k|^2 u0 so both terms matter on every shell
    SpectralField f = shell_field(g, seed + 1, q);
    f *= forcing_levels[i % 3] * cfg.mu * std::ldexp(1.0, 2 * q);
    const HeatTerms r = heat_terms(u0, f, cfg, rule);
    gap = std::max(gap, r.duhamel_gap);
    study.add(r.lhs, r.rhs);
  }
  study.extras["duhamel_gap"] = gap;
  study.extras["a"] = cfg.a;
  study.extras["mu"] = cfg.mu;
  study.require_nondegenerate();
  return study;
}

std::pair<double, double> heat_estimate_terms(const SpectralField& u0, const SpectralField& f,
                                              const HeatProbeConfig& cfg) {
  validate(cfg);
  u0.require_compatible(f);
  const HeatTerms r = heat_terms(u0, f, cfg, graded_rule(cfg.horizon));
  return {r.lhs, r.rhs};
}

double friction_spread(HeatProbeConfig cfg, const std::vector<double>& frictions) {
  if (frictions.empty()) throw InvalidArgument("friction spread needs at least one value");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double a : frictions) {
    cfg.a = a;
    const double m = probe_heat_semigroup(cfg).max_ratio();
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return (hi - lo) / lo;
}

// -------------------------------------------------------------- Maxwell

namespace {

class SupObserver : public Observer<MaxwellState> {
 public:
  explicit SupObserver(double s) : s_(s) {}
  void on_step(const MaxwellState& st, long, bool) override {
    const double e = sobolev_norm(st.E(), s_, false);
    const double b = sobolev_norm(st.B(), s_, false);
    sup_pair = std::max(sup_pair, std::hypot(e, b));
    sup_e = std::max(sup_e, e);
    sup_b = std::max(sup_b, b);
  }
  double sup_pair = 0.0, sup_e = 0.0, sup_b = 0.0;

 private:
  double s_;
};

// int_0^T phi(t) dt by composite 8-point Gauss-Legendre
template <class Fn>
double integrate(Fn&& phi, double horizon) {
  using G = boost::math::quadrature::gauss<double, 8>;
  constexpr int panels = 64;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = horizon * i / panels, b = horizon * (i + 1) / panels;
    sum += G::integrate(phi, a, b);
  }
  return sum;
}

}  // namespace

RatioStudy probe_maxwell_bound(const MaxwellProbeConfig& cfg) {
  if (cfg.count < 1 || !(cfg.horizon > 0.0) || !(cfg.dt > 0.0)) {
    throw InvalidArgument("Maxwell probe needs count >= 1, horizon > 0 and dt > 0");
  }
  const Grid g(2, cfg.n);
  RatioStudy study;
  study.tag = "2.2";
  study.corpus = {"random solenoidal forcings with smooth time profiles", 2, cfg.n, cfg.count};
  double literal_max = 0.0;
  int literal_violations = 0;

  for (int i = 0; i < cfg.count; ++i) {
    const std::uint64_t seed = cfg.seed + 3 * static_cast<std::uint64_t>(i);
    RandomFieldSpec spec;
    spec.seed = seed;
    const SpectralField shape = random_field(g, spec);
    std::function<double(double)> phi;
    MaxwellState s0 = MaxwellState::zero(g);
    switch (i % 5) {
      case 0:  // constant forcing, rest state
        phi = [](double) { return 1.0; };
        break;
      case 1:
        phi = [](double t) { return 1.0 + 0.5 * std::cos(3.0 * t); };
        spec.seed = seed + 1;
        s0.E() = random_field(g, spec);
        spec.seed = seed + 2;
        s0.B() = random_field(g, spec);
        break;
      case 2:
        phi = [](double t) { return t; };
        spec.seed = seed + 1;
        s0.B() = random_field(g, spec);
        break;
      case 3: {  // unforced traveling plane wave
        phi = [](double) { return 0.0; };
        const double amp = 0.5 + 0.1 * i;
        s0.E() = to_spectral(sample(g, 3, [&](const auto& x, std::span<double> o) {
          o[0] = 0.0;
          o[1] = 0.0;
          o[2] = amp * std::cos(x[0]);
        }));
        s0.B() = to_spectral(sample(g, 3, [&](const auto& x, std::span<double> o) {
          o[0] = 0.0;
          o[1] = -amp * std::cos(x[0]);
          o[2] = 0.0;
        }));
        break;
      }
      default:
        phi = [](double t) { return std::sin(2.0 * t); };
        spec.seed = seed + 1;
        s0.E() = random_field(g, spec);
        break;
    }
    const MaxwellSystem system([&](double t) { return phi(t) * shape; });
    StepperConfig sc;
    sc.dt = cfg.dt;
    sc.t_end = cfg.horizon;
    sc.scheme = Scheme::rk4_plain;
    SupObserver obs(cfg.s);
    Observer<MaxwellState>* list[] = {&obs};
    run(s0, system, sc, std::span<Observer<MaxwellState>* const>(list), 1);

    const double f_l1 =
        sobolev_norm(shape, cfg.s, false) * integrate([&](double t) { return std::abs(phi(t)); }, cfg.horizon);
    const double rhs = sobolev_norm(s0.E(), cfg.s, false) + sobolev_norm(s0.B(), cfg.s, false) + f_l1;
    study.add(obs.sup_pair, rhs);
    if (rhs >= kMinRhs) {
      const double literal = (obs.sup_e + obs.sup_b) / rhs;
      literal_max = std::max(literal_max, literal);
      if (literal > 1.0 + 1e-6) ++literal_violations;
    }
  }
  study.extras["literal_max_ratio"] = literal_max;
  study.extras["literal_violations"] = literal_violations;
  study.require_nondegenerate();
  return study;
}

}  // namespace nsm
