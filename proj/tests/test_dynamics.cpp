#include <doctest.h>

#include <cmath>

#include "nsm/diagnostics.hpp"
#include "nsm/dynamics.hpp"
#include "nsm/error.hpp"
#include "nsm/lp_norms.hpp"
#include "nsm/spectral_ops.hpp"

using namespace nsm;

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

NsmState random_state(const Grid& g, std::uint64_t seed, double scale = 0.5) {
  NsmState s = NsmState::zero(g);
  for (std::size_t i = 0; i < 4; ++i) {
    RandomFieldSpec spec;
    spec.seed = seed * 10 + i;
    spec.l2 = scale * (1.0 + 0.25 * static_cast<double>(i));
    s.fields[i] = random_field(g, spec);
  }
  return s;
}

PhysicalParams odd_params() {
  PhysicalParams p;
  p.n = 2.0;
  p.m_minus = 0.5;
  p.m_plus = 3.0;
  p.e = 0.7;
  p.Z = 2;
  p.eps0 = 1.5;
  p.mu0 = 0.8;
  p.nu_minus = 0.1;
  p.nu_plus = 0.2;
  p.alpha = 0.3;
  return p.validated();
}

}  // namespace

TEST_CASE("parameter validation") {
  PhysicalParams p;
  CHECK_NOTHROW(p.validated());
  p.alpha = 0.0;
  CHECK_NOTHROW(p.validated());
  p.alpha = -1.0;
  CHECK_THROWS_AS(p.validated(), InvalidArgument);
  p = PhysicalParams{};
  p.Z = 0;
  CHECK_THROWS_AS(p.validated(), InvalidArgument);
  p = PhysicalParams{};
  p.m_plus = 0.0;
  CHECK_THROWS_AS(p.validated(), InvalidArgument);

  const PhysicalParams q = odd_params();
  CHECK(q.mu_minus == doctest::Approx(0.1 / (2.0 * 0.5)));
  CHECK(q.a_plus == doctest::Approx(0.7 * 2 / 3.0));
  CHECK(q.b_plus == doctest::Approx(0.3 / 6.0));
  CHECK(q.light2 == doctest::Approx(1.0 / 1.2));
  CHECK_THROWS_AS(Formulation::truncated(0.0), InvalidArgument);
  CHECK_THROWS_AS(NsmSystem(q, Formulation::bulk_current()), InvalidArgument);
}

TEST_CASE("zero state has zero tangent") {
  const Grid g(3, 16);
  const NsmState d = rhs(NsmState::zero(g), odd_params(), Formulation::physical());
  for (const auto& f : d.fields) CHECK(f.max_amplitude() == 0.0);
  const BulkState b = rhs_bulk_current(BulkState::zero(g), 0.5);
  for (const auto& f : b.fields) CHECK(f.max_amplitude() == 0.0);
}

TEST_CASE("Maxwell plane wave tangent") {
  const Grid g(2, 16);
  NsmState s = NsmState::zero(g);
  s.E() = field(g, [](const auto& x) { return std::array<double, 3>{0.0, std::cos(x[0]), 0.0}; });
  s.B() = field(g, [](const auto& x) { return std::array<double, 3>{0.0, 0.0, std::cos(x[0])}; });
  PhysicalParams p = PhysicalParams::unit();
  p.e = 0.0;
  const NsmState d = rhs(s, p.validated(), Formulation::physical());
  const SpectralField sin_y = field(g, [](const auto& x) { return std::array<double, 3>{0.0, std::sin(x[0]), 0.0}; });
  const SpectralField sin_z = field(g, [](const auto& x) { return std::array<double, 3>{0.0, 0.0, std::sin(x[0])}; });
  CHECK(max_diff(d.E(), sin_y) < 1e-14);
  CHECK(max_diff(d.B(), sin_z) < 1e-14);
}

TEST_CASE("equal velocities with Z = 1 cancel friction and the current source") {
  const Grid g(3, 16);
  NsmState s = random_state(g, 1);
  s.v_plus() = s.v_minus();
  PhysicalParams p = odd_params();
  p.Z = 1;
  p.m_plus = p.m_minus;
  const NsmState with = rhs(s, p.validated(), Formulation::physical());
  p.alpha = 0.0;
  const NsmState without = rhs(s, p.validated(), Formulation::physical());
  CHECK(max_diff(with.v_minus(), without.v_minus()) == 0.0);
  // dE = c^2 curl B only
  const SpectralField expected = (1.0 / (p.eps0 * p.mu0)) * curl(s.B());
  CHECK(max_diff(with.E(), expected) < 1e-14 * std::max(1.0, expected.max_amplitude()));
}

TEST_CASE("tangent is divergence free") {
  const Grid g(3, 16);
  const NsmState d = rhs(random_state(g, 2), odd_params(), Formulation::physical());
  for (const auto& f : d.fields) CHECK(divergence_residual(f) < 1e-11);
}

TEST_CASE("state validation") {
  const Grid g(2, 16);
  NsmState s = random_state(g, 3);
  s.E() += field(g, [](const auto& x) { return std::array<double, 3>{0.1 * std::cos(x[0]), 0.0, 0.0}; });
  CHECK_THROWS_AS(rhs(s, odd_params(), Formulation::physical()), RejectedState);
  NsmState mixed = random_state(g, 3);
  mixed.B() = SpectralField::vector(Grid(2, 32));
  CHECK_THROWS_AS(rhs(mixed, odd_params(), Formulation::physical()), RejectedState);
}

TEST_CASE("truncation beyond the grid is the identity") {
  const Grid g(3, 16);
  const NsmState s = random_state(g, 4);
  const NsmState a = rhs(s, odd_params(), Formulation::physical());
  const NsmState b = rhs(s, odd_params(), Formulation::truncated(g.max_wavenumber()));
  for (std::size_t i = 0; i < 4; ++i) CHECK(max_diff(a.fields[i], b.fields[i]) < 1e-14);

  // the truncated flow keeps states supported in the ball there
  NsmState inside = s;
  for (auto& f : inside.fields) f = cutoff(f, 3.0);
  const NsmState c = rhs(inside, odd_params(), Formulation::truncated(3.0));
  const auto k2 = g.k2();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t m = 0; m < g.size(); ++m) {
      if (k2[m] > 9.0) {
        for (int comp = 0; comp < 3; ++comp) CHECK(std::abs(c.fields[i].at(comp, m)) < 1e-14);
      }
    }
  }
}

TEST_CASE("tangent energy balance") {
  for (int d : {2, 3}) {
    const Grid g(d, 16);
    const NsmState s = random_state(g, 5);
    const PhysicalParams p = odd_params();
    const NsmState ds = rhs(s, p, Formulation::physical());
    const double rate = energy_rate(s, ds, p);
    const auto diss = dissipation_rates(s, p);
    const double expected = -(diss[0] + diss[1] + diss[2]);
    CHECK(std::abs(rate - expected) <= 1e-10 * std::abs(expected));
  }
}

TEST_CASE("bulk-current variables") {
  const Grid g(3, 16);
  SUBCASE("limits") {
    NsmState s = random_state(g, 6);
    s.v_plus() = s.v_minus();
    BulkState b = to_bulk_current(s);
    CHECK(max_diff(b.u(), s.v_minus()) == 0.0);
    CHECK(b.j().max_amplitude() == 0.0);
    s.v_plus() = -1.0 * s.v_minus();
    b = to_bulk_current(s);
    CHECK(b.u().max_amplitude() == 0.0);
    CHECK(max_diff(b.j(), s.v_plus()) == 0.0);
  }
  SUBCASE("round trip") {
    const NsmState s = random_state(g, 7);
    const NsmState back = from_bulk_current(to_bulk_current(s));
    for (std::size_t i = 0; i < 4; ++i) CHECK(max_diff(back.fields[i], s.fields[i]) < 1e-15);
  }
  SUBCASE("bulk tangent is the pushforward of the two-fluid tangent") {
    const NsmState s = random_state(g, 8, 0.1);
    for (double alpha : {0.0, 0.7}) {
      const BulkState pushed = to_bulk_current(rhs(s, PhysicalParams::unit(alpha), Formulation::normalized()));
      const BulkState direct = rhs_bulk_current(to_bulk_current(s), alpha);
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(max_diff(pushed.fields[i], direct.fields[i]) <= 1e-12 * pushed.fields[i].max_amplitude());
      }
    }
  }
  SUBCASE("without current and field the bulk tangent is Navier-Stokes") {
    BulkState b = BulkState::zero(g);
    RandomFieldSpec spec;
    spec.seed = 3;
    b.u() = random_field(g, spec);
    const BulkState d = rhs_bulk_current(b, 1.0);
    const SpectralField ns =
        laplacian(b.u()) - leray_project(pointwise_product(b.u(), b.u(), ProductKind::advection));
    CHECK(max_diff(d.u(), ns) < 1e-14);
    CHECK(d.j().max_amplitude() < 1e-15);
    CHECK(d.E().max_amplitude() == 0.0);
    CHECK(d.B().max_amplitude() == 0.0);
  }
}

TEST_CASE("normalized formulation ignores every constant but alpha") {
  const Grid g(2, 16);
  const NsmState s = random_state(g, 9);
  PhysicalParams p = odd_params();
  const NsmState a = rhs(s, p, Formulation::normalized());
  const NsmState b = rhs(s, PhysicalParams::unit(p.alpha), Formulation::physical());
  for (std::size_t i = 0; i < 4; ++i) CHECK(max_diff(a.fields[i], b.fields[i]) == 0.0);
}

TEST_CASE("stability limit names the binding constraint") {
  const Grid g(2, 32);
  NsmState s = NsmState::zero(g);
  const NsmSystem sys(PhysicalParams::unit(), Formulation::physical());
  CHECK(sys.stability_limit(s, 0.5).constraint == "Maxwell wave");
  CHECK(sys.stability_limit(s, 0.5).dt_max == doctest::Approx(0.5 * g.dx()));
  RandomFieldSpec spec;
  spec.l2 = 200.0;
  s.v_minus() = random_field(g, spec);
  const auto lim = sys.stability_limit(s, 0.5);
  CHECK(lim.constraint == "advective");
  CHECK(lim.dt_max == doctest::Approx(0.5 * g.dx() / max_speed(s.v_minus())));
}
