#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nsm/error.hpp"
#include "nsm/integrator.hpp"
#include "nsm/probes.hpp"
#include "nsm/spectral_ops.hpp"

using namespace nsm;
using std::numbers::pi;

namespace {

SpectralField field(const Grid& g, auto fn) {
  return to_spectral(sample(g, 3, [&](const std::array<double, 3>& x, std::span<double> o) {
    const auto v = fn(x);
    for (int c = 0; c < 3; ++c) o[c] = v[c];
  }));
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

}  // namespace

TEST_CASE("ratio study bookkeeping") {
  RatioStudy s;
  s.tag = "t";
  CHECK_THROWS_AS(s.max_ratio(), InvalidArgument);
  s.add(0.0, 0.0);
  s.add(1.0, 1e-13);
  CHECK(s.discarded == 2);
  CHECK_THROWS_AS(s.require_nondegenerate(), InvalidArgument);
  s.add(1.0, 2.0);
  s.add(3.0, 2.0);
  s.add(1.0, 1.0);
  CHECK(s.samples.size() == 3);
  CHECK(s.max_ratio() == 1.5);
  CHECK(s.median_ratio() == 1.0);
  s.add(2.0, 1.0);
  CHECK(s.median_ratio() == 1.25);
}

TEST_CASE("product tags") {
  CHECK(parse_product_tag("2.1") == ProductTag::est1);
  CHECK(parse_product_tag("2.3-form") == ProductTag::est3);
  CHECK(parse_product_tag("PE4") == ProductTag::pe4);
  CHECK_THROWS_AS(parse_product_tag("2.5"), InvalidArgument);
  CHECK(to_string(ProductTag::pe2) == "PE2");
  CHECK(product_dimension(ProductTag::est1) == 2);
  CHECK(product_dimension(ProductTag::pe3) == 3);
}

TEST_CASE("single-mode closed forms") {
  const Grid g(2, 32);
  const SpectralField u = field(g, [](const auto& x) { return std::array<double, 3>{0.0, std::sin(x[0]), 0.0}; });

  // u (x) u has the single entry sin^2 x1 = 1/2 - cos(2 x1)/2
  const auto [l1, r1] = est1_terms(u, u, 0.5);
  CHECK(l1 == doctest::Approx(pi / 2.0).epsilon(1e-13));
  CHECK(r1 == doctest::Approx(std::pow(2.0, 0.25) * 2.0 * pi * pi).epsilon(1e-13));
  CHECK(l1 / r1 == doctest::Approx(1.0 / (4.0 * pi * std::pow(2.0, 0.25))).epsilon(1e-12));
  CHECK(l1 / r1 < 3.0);

  // (sin x2, 0, 0) . grad (0, sin x1, 0) = (0, sin x2 cos x1, 0)
  const SpectralField w = field(g, [](const auto& x) { return std::array<double, 3>{std::sin(x[1]), 0.0, 0.0}; });
  const auto [l3, r3] = est3_terms(w, u, 0.5);
  CHECK(l3 == doctest::Approx(pi * std::pow(3.0, -0.25)).epsilon(1e-13));
  CHECK(r3 == doctest::Approx(4.0 * std::sqrt(2.0) * pi * pi).epsilon(1e-13));

  const auto zero = est1_terms(SpectralField::vector(g), SpectralField::vector(g), 0.5);
  RatioStudy s;
  s.add(zero.first, zero.second);
  CHECK(s.discarded == 1);
}

TEST_CASE("unaliased products agree with the dealiased ones on band-limited data") {
  const Grid g(3, 16);
  RandomFieldSpec spec;
  // products reach |k_i| <= 4, inside the dealiased box of N = 16
  spec.band = 2.5;
  spec.seed = 1;
  const SpectralField a = random_field(g, spec);
  spec.seed = 2;
  const SpectralField b = random_field(g, spec);
  CHECK(max_diff(product_cross(a, b), pointwise_product(a, b, ProductKind::cross)) < 1e-14);
  CHECK(max_diff(product_advection(a, b), pointwise_product(a, b, ProductKind::advection)) < 1e-14);
  // e1 x e2 = e3 by hand
  const SpectralField e1 = field(g, [](const auto& x) { return std::array<double, 3>{std::cos(x[2]), 0.0, 0.0}; });
  const SpectralField e2 = field(g, [](const auto&) { return std::array<double, 3>{0.0, 1.0, 0.0}; });
  const SpectralField e3 = field(g, [](const auto& x) { return std::array<double, 3>{0.0, 0.0, std::cos(x[2])}; });
  CHECK(max_diff(product_cross(e1, e2), e3) < 1e-14);
}

TEST_CASE("heat trajectories") {
  const Grid g(2, 16);
  const SpectralField u = field(g, [](const auto& x) { return std::array<double, 3>{0.0, std::sin(2.0 * x[0]), 0.0}; });
  const Trajectory tr = heat_trajectory(u, 0.5, 1.0, 4);
  CHECK(tr.dt == 0.25);
  REQUIRE(tr.samples.size() == 4);
  CHECK(max_diff(tr.samples[3], std::exp(-0.5 * 4.0 * 0.75) * u) < 1e-15);
  CHECK_THROWS_AS(heat_trajectory(u, 0.5, 1.0, 0), InvalidArgument);
  const Trajectory other = heat_trajectory(u, 0.5, 1.0, 3);
  CHECK_THROWS_AS(space_time_terms(ProductTag::pe1, tr, other, 1.0), InvalidArgument);
  CHECK_THROWS_AS(space_time_terms(ProductTag::est1, tr, tr, 1.0), InvalidArgument);
}

TEST_CASE("product ratio studies are finite on small corpora") {
  for (ProductTag t : {ProductTag::est1, ProductTag::est3, ProductTag::pe1, ProductTag::pe2, ProductTag::pe3,
                       ProductTag::pe4}) {
    ProductCorpus c = default_product_corpus(t, product_dimension(t) == 2 ? 32 : 16);
    c.count = 6;
    const RatioStudy s = probe_product_estimate(t, c);
    CHECK(s.samples.size() == 6);
    CHECK(std::isfinite(s.max_ratio()));
    CHECK(s.max_ratio() > 0.0);
    CHECK(s.corpus.dimension == product_dimension(t));
  }
  ProductCorpus bad;
  bad.count = 0;
  CHECK_THROWS_AS(probe_product_estimate(ProductTag::est1, bad), InvalidArgument);
}

TEST_CASE("heat mode closed form") {
  // d/dt u = -lambda u + f
  const double u0 = 0.3, f = 1.7, lambda = 2.5, t = 0.8;
  const double h = 1e-5;
  const double deriv = (heat_mode(u0, f, lambda, t + h) - heat_mode(u0, f, lambda, t - h)) / (2 * h);
  CHECK(deriv == doctest::Approx(-lambda * heat_mode(u0, f, lambda, t) + f).epsilon(1e-8));
  CHECK(heat_mode(u0, f, lambda, 0.0) == u0);
  CHECK(heat_mode(0.0, 2.0, 0.0, 3.0) == 6.0);
}

TEST_CASE("heat probe") {
  const Grid g(2, 64);
  const SpectralField u0 = field(g, [](const auto& x) { return std::array<double, 3>{0.0, std::sin(3.0 * x[0]), 0.0}; });
  const SpectralField none = SpectralField::vector(g);
  HeatProbeConfig cfg;
  cfg.n = 64;

  SUBCASE("p = infinity ratio is independent of a and mu for free decay") {
    cfg.p = kTimeInfinity;
    const auto base = heat_estimate_terms(u0, none, cfg);
    for (double a : {1.0, 10.0}) {
      cfg.a = a;
      const auto r = heat_estimate_terms(u0, none, cfg);
      CHECK(r.first / r.second == doctest::Approx(base.first / base.second).epsilon(1e-14));
    }
    cfg.a = 0.0;
    cfg.mu = 2.0;
    const auto r = heat_estimate_terms(u0, none, cfg);
    CHECK(r.first / r.second == doctest::Approx(base.first / base.second).epsilon(1e-14));
  }
  SUBCASE("free decay LHS matches the closed form") {
    // s = 0, p = 2: sup ||u|| + ||u||_{L^2_T Hdot^1} with a single |k| = 3 mode
    cfg.p = 2.0;
    cfg.a = 0.5;
    const double lambda = 0.5 + 9.0;
    const double norm0 = pi * std::sqrt(2.0);
    const double l2t = norm0 * std::sqrt(-std::expm1(-2.0 * lambda) / (2.0 * lambda));
    // |k| = 3 sits in block q = 2, weight 2^{2q}
    const auto r = heat_estimate_terms(u0, none, cfg);
    CHECK(r.first == doctest::Approx(norm0 + 4.0 * l2t).epsilon(1e-12));
    CHECK(r.second == doctest::Approx(norm0).epsilon(1e-14));
  }
  SUBCASE("forced mode: Duhamel quadrature gap") {
    HeatProbeConfig c;
    c.n = 64;
    c.count = 6;
    c.q_max = 3;
    const RatioStudy s = probe_heat_semigroup(c);
    CHECK(s.extras.at("duhamel_gap") < 1e-6);
    CHECK(s.samples.size() == 6);
    CHECK(std::isfinite(s.max_ratio()));
  }
  SUBCASE("invalid exponents") {
    cfg.p = 1.0;
    cfg.r1 = 2.0;
    CHECK_THROWS_AS(probe_heat_semigroup(cfg), InvalidArgument);
    cfg.p = 2.0;
    cfg.r1 = 0.5;
    CHECK_THROWS_AS(probe_heat_semigroup(cfg), InvalidArgument);
    cfg.r1 = 1.0;
    cfg.mu = 0.0;
    CHECK_THROWS_AS(probe_heat_semigroup(cfg), InvalidArgument);
  }
}

TEST_CASE("literal Maxwell bound fails for constant forcing from rest") {
  // E'' = -|k|^2 E from E = B = 0 with E' = f: E = sin t f, |B| = (1 - cos t) |f|
  const Grid g(2, 16);
  const SpectralField f = field(g, [](const auto& x) { return std::array<double, 3>{0.0, 0.0, std::cos(x[0])}; });
  const MaxwellSystem sys([&](double) { return f; });
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.scheme = Scheme::rk4_plain;
  struct Sup : Observer<MaxwellState> {
    double e = 0.0, b = 0.0, pair = 0.0;
    void on_step(const MaxwellState& s, long, bool) override {
      e = std::max(e, l2_norm(s.E()));
      b = std::max(b, l2_norm(s.B()));
      pair = std::max(pair, std::hypot(l2_norm(s.E()), l2_norm(s.B())));
    }
  } sup;
  std::vector<Observer<MaxwellState>*> obs{&sup};
  run(MaxwellState::zero(g), sys, cfg, std::span<Observer<MaxwellState>* const>(obs), 1);
  const double fn = l2_norm(f);
  CHECK((sup.e + sup.b) / fn == doctest::Approx(std::sin(1.0) + 1.0 - std::cos(1.0)).epsilon(1e-8));
  CHECK(sup.pair / fn == doctest::Approx(2.0 * std::sin(0.5)).epsilon(1e-8));
  CHECK(sup.pair <= fn);
}

TEST_CASE("Maxwell probe") {
  MaxwellProbeConfig cfg;
  cfg.n = 16;
  cfg.count = 10;
  const RatioStudy s = probe_maxwell_bound(cfg);
  CHECK(s.samples.size() == 10);
  CHECK(s.max_ratio() <= 1.0 + 1e-6);
  CHECK(s.extras.at("literal_max_ratio") > 1.0);
  CHECK(s.extras.at("literal_violations") >= 1.0);
  // the unforced traveling wave (sample 3) attains the literal bound with equality
  CHECK(s.samples[3].ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
}
