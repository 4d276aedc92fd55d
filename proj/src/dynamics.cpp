#include "nsm/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "nsm/error.hpp"
#include "nsm/spectral_ops.hpp"

namespace nsm {

namespace {

template <class S>
void check_state(const S& s) {
  static const char* const names4[] = {"field 0", "field 1", "field 2", "field 3"};
  for (std::size_t i = 0; i < S::size; ++i) {
    const auto& f = s.fields[i];
    if (!(f.grid() == s.fields[0].grid())) throw RejectedState("state fields do not share one grid");
    if (f.components() != 3) throw RejectedState("state fields must be vector fields");
    const double r = divergence_residual(f);
    if (r > kDivergenceTolerance) {
      throw RejectedState(std::string("divergence constraint violated in ") + names4[i] +
                          " (residual " + std::to_string(r) + ")");
    }
  }
}

template <class S>
void project_all(S& s) {
  for (auto& f : s.fields) f = leray_project(f);
}

StabilityLimit limit_for(const Grid& g, double cfl, double vmax, double light_speed) {
  const double wave = cfl * g.dx() / light_speed;
  const double advective = vmax > 0.0 ? cfl * g.dx() / vmax : std::numeric_limits<double>::infinity();
  if (advective < wave) return {advective, "advective"};
  return {wave, "Maxwell wave"};
}

}  // namespace

Formulation Formulation::truncated(double k_max) {
  if (!(k_max > 0.0)) throw InvalidArgument("truncated formulation needs k_max > 0");
  return {Kind::truncated, k_max};
}

std::string Formulation::name() const {
  switch (kind) {
    case Kind::physical: return "physical";
    case Kind::normalized: return "normalized";
    case Kind::bulk_current: return "bulk-current";
    case Kind::truncated: return "truncated";
  }
  return "unknown";
}

double max_speed(const SpectralField& v) {
  const PhysicalField p = to_physical(v);
  double m2 = 0.0;
  for (std::size_t i = 0; i < v.modes(); ++i) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += p.component(c)[i] * p.component(c)[i];
    m2 = std::max(m2, s);
  }
  return std::sqrt(m2);
}

NsmSystem::NsmSystem(const PhysicalParams& params, Formulation form) : form_(form) {
  if (form.kind == Formulation::Kind::bulk_current) {
    throw InvalidArgument("bulk-current formulation is evolved by BulkCurrentSystem");
  }
  if (form.kind == Formulation::Kind::truncated && !(form.k_max > 0.0)) {
    throw InvalidArgument("truncated formulation needs k_max > 0");
  }
  params_ = form.kind == Formulation::Kind::normalized ? PhysicalParams::unit(params.alpha)
                                                       : params.validated();
}

NsmState NsmSystem::rhs(const NsmState& s, bool include_diffusion) const {
  check_state(s);
  const PhysicalParams& p = params_;
  const bool truncated = form_.kind == Formulation::Kind::truncated;
  const auto J = [&](SpectralField f) { return truncated ? cutoff(f, form_.k_max) : f; };

  const Grid& g = s.grid();
  // a species at rest has no transport or Lorentz term (field-only runs)
  const bool zero_m = s.v_minus().max_amplitude() == 0.0;
  const bool zero_p = s.v_plus().max_amplitude() == 0.0;
  const PhysicalField vm = zero_m ? PhysicalField(g, 3) : to_physical(s.v_minus());
  const PhysicalField vp = zero_p ? PhysicalField(g, 3) : to_physical(s.v_plus());
  // B only enters through the Lorentz force
  const bool lorentz = (p.a_minus != 0.0 && !zero_m) || (p.a_plus != 0.0 && !zero_p);
  const PhysicalField b = lorentz ? to_physical(s.B()) : PhysicalField(g, 3);

  const SpectralField E = J(s.E());
  const SpectralField slip = J(s.v_plus() - s.v_minus());

  NsmState d = s;
  {
    // (v.grad)v + a_-(v x B)
    ProductSum sum(g);
    if (!zero_m) sum.add_transport(vm, vm);
    if (p.a_minus != 0.0 && !zero_m) sum.add_cross(vm, b, p.a_minus);
    SpectralField force = J(sum.transform());
    force *= -1.0;
    force.axpy(-p.a_minus, E);
    force.axpy(p.b_minus, slip);
    d.v_minus() = leray_project(force);
  }
  {
    // (v.grad)v - a_+(v x B)
    ProductSum sum(g);
    if (!zero_p) sum.add_transport(vp, vp);
    if (p.a_plus != 0.0 && !zero_p) sum.add_cross(vp, b, -p.a_plus);
    SpectralField force = J(sum.transform());
    force *= -1.0;
    force.axpy(p.a_plus, E);
    force.axpy(-p.b_plus, slip);
    d.v_plus() = leray_project(force);
  }
  if (include_diffusion) {
    d.v_minus().axpy(p.mu_minus, laplacian(s.v_minus()));
    d.v_plus().axpy(p.mu_plus, laplacian(s.v_plus()));
  }
  d.E() = curl(J(s.B()));
  d.E() *= p.light2;
  d.E().axpy(-p.current * p.Z, J(s.v_plus()));
  d.E().axpy(p.current, J(s.v_minus()));
  d.B() = curl(E);
  d.B() *= -1.0;
  return d;
}

std::array<double, 4> NsmSystem::diffusivity() const {
  return {params_.mu_minus, params_.mu_plus, 0.0, 0.0};
}

void NsmSystem::project(NsmState& s) const { project_all(s); }

StabilityLimit NsmSystem::stability_limit(const NsmState& s, double cfl_safety) const {
  const double vmax = std::max(max_speed(s.v_minus()), max_speed(s.v_plus()));
  return limit_for(s.grid(), cfl_safety, vmax, std::sqrt(params_.light2));
}

NsmState NsmSystem::prepare(NsmState s) const {
  for (auto& f : s.fields) {
    f = dealias(leray_project(f));
    if (form_.kind == Formulation::Kind::truncated) f = cutoff(f, form_.k_max);
  }
  return s;
}

NsmState rhs(const NsmState& s, const PhysicalParams& params, Formulation form) {
  return NsmSystem(params, form).rhs(s, true);
}

BulkState to_bulk_current(const NsmState& s) {
  BulkState b = BulkState::zero(s.grid());
  b.t = s.t;
  b.u() = 0.5 * (s.v_minus() + s.v_plus());
  b.j() = 0.5 * (s.v_plus() - s.v_minus());
  b.E() = s.E();
  b.B() = s.B();
  return b;
}

NsmState from_bulk_current(const BulkState& b) {
  NsmState s = NsmState::zero(b.grid());
  s.t = b.t;
  s.v_minus() = b.u() - b.j();
  s.v_plus() = b.u() + b.j();
  s.E() = b.E();
  s.B() = b.B();
  return s;
}

BulkCurrentSystem::BulkCurrentSystem(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
}

BulkState BulkCurrentSystem::rhs(const BulkState& s, bool include_diffusion) const {
  check_state(s);
  const PhysicalField u = to_physical(s.u());
  const PhysicalField j = to_physical(s.j());
  const PhysicalField b = to_physical(s.B());

  BulkState d = s;
  {
    ProductSum sum(s.grid());
    sum.add_transport(u, u, -1.0);
    sum.add_transport(j, j, -1.0);
    sum.add_cross(j, b);
    d.u() = leray_project(sum.transform());
  }
  {
    ProductSum sum(s.grid());
    sum.add_transport(u, j, -2.0);
    sum.add_cross(u, b);
    SpectralField force = sum.transform();
    force += s.E();
    d.j() = leray_project(force);
    d.j().axpy(-2.0 * alpha_, s.j());
  }
  if (include_diffusion) {
    d.u() += laplacian(s.u());
    d.j() += laplacian(s.j());
  }
  d.E() = curl(s.B());
  d.E().axpy(-2.0, s.j());
  d.B() = curl(s.E());
  d.B() *= -1.0;
  return d;
}

void BulkCurrentSystem::project(BulkState& s) const { project_all(s); }

StabilityLimit BulkCurrentSystem::stability_limit(const BulkState& s, double cfl_safety) const {
  // |v_+-| <= |u| + |j|
  const double vmax = max_speed(s.u()) + max_speed(s.j());
  return limit_for(s.grid(), cfl_safety, vmax, 1.0);
}

BulkState rhs_bulk_current(const BulkState& s, double alpha) {
  return BulkCurrentSystem(alpha).rhs(s, true);
}

MaxwellState MaxwellSystem::rhs(const MaxwellState& s, bool) const {
  check_state(s);
  MaxwellState d = s;
  d.E() = curl(s.B());
  if (forcing_) d.E() += forcing_(s.t);
  d.B() = curl(s.E());
  d.B() *= -1.0;
  return d;
}

void MaxwellSystem::project(MaxwellState& s) const { project_all(s); }

StabilityLimit MaxwellSystem::stability_limit(const MaxwellState& s, double cfl_safety) const {
  return limit_for(s.grid(), cfl_safety, 0.0, 1.0);
}

}  // namespace nsm
