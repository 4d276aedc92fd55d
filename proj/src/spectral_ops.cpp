#include "nsm/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nsm/error.hpp"
#include "nsm/kernels.hpp"

namespace nsm {

namespace {

kernels::Wavevector wavevector(const Grid& g) { return {g.kd(0), g.kd(1), g.kd(2)}; }

kernels::CVec cvec(SpectralField& f) { return {f.component(0), f.component(1), f.component(2)}; }
kernels::CConstVec cvec(const SpectralField& f) {
  return {f.component(0), f.component(1), f.component(2)};
}
kernels::RVec rvec(PhysicalField& p) { return {p.component(0), p.component(1), p.component(2)}; }
kernels::RConstVec rvec(const PhysicalField& p) {
  return {p.component(0), p.component(1), p.component(2)};
}

void require_vector(const SpectralField& f, const char* op) {
  if (f.components() != 3) throw InvalidArgument(std::string(op) + " requires a vector field");
}

}  // namespace

SpectralField leray_project(const SpectralField& f) {
  require_vector(f, "leray_project");
  SpectralField out = f;
  kernels::leray(wavevector(f.grid()), f.grid().kd2(), cvec(out));
  return out;
}

SpectralField curl(const SpectralField& f) {
  require_vector(f, "curl");
  SpectralField out = SpectralField::vector(f.grid());
  kernels::curl(wavevector(f.grid()), cvec(f), cvec(out));
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    kernels::scale_by_symbol(out.component(c), f.grid().k2(), -1.0);
  }
  return out;
}

SpectralField gradient(const SpectralField& s) {
  if (s.components() != 1) throw InvalidArgument("gradient requires a scalar field");
  SpectralField out = SpectralField::vector(s.grid());
  const cplx i{0.0, 1.0};
  for (int c = 0; c < 3; ++c) {
    auto kd = s.grid().kd(c);
    auto src = s.component(0);
    auto dst = out.component(c);
    for (std::size_t m = 0; m < dst.size(); ++m) dst[m] = i * kd[m] * src[m];
  }
  return out;
}

SpectralField divergence(const SpectralField& f) {
  require_vector(f, "divergence");
  SpectralField out = SpectralField::scalar(f.grid());
  kernels::divergence(wavevector(f.grid()), cvec(f), out.component(0));
  return out;
}

SpectralField cutoff(const SpectralField& f, double k_max) {
  if (!(k_max > 0.0)) throw InvalidArgument("cutoff radius must be positive");
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    kernels::ball_cutoff(out.component(c), f.grid().k2(), k_max * k_max);
  }
  return out;
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    kernels::apply_mask(out.component(c), f.grid().dealias_mask());
  }
  return out;
}

GradientSamples physical_gradient(const SpectralField& v) {
  require_vector(v, "physical_gradient");
  GradientSamples out;
  const cplx i{0.0, 1.0};
  SpectralField d = SpectralField::vector(v.grid());
  for (int j = 0; j < v.grid().dimension(); ++j) {
    auto kd = v.grid().kd(j);
    for (int c = 0; c < 3; ++c) {
      auto src = v.component(c);
      auto dst = d.component(c);
      const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dst.size());
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t m = 0; m < n; ++m) dst[m] = i * kd[m] * src[m];
    }
    out.push_back(to_physical(d));
  }
  return out;
}

SpectralField advect_samples(const PhysicalField& u, const GradientSamples& grad_v) {
  const int dims = u.grid().dimension();
  if (static_cast<int>(grad_v.size()) != dims) throw GridMismatch("gradient samples incomplete");
  PhysicalField out(u.grid(), 3);
  std::array<kernels::RConstVec, 3> grad;
  const std::span<const double> none;
  for (int c = 0; c < 3; ++c) {
    for (int j = 0; j < 3; ++j) {
      grad[c][j] = j < dims ? grad_v[static_cast<std::size_t>(j)].component(c) : none;
    }
  }
  kernels::advect(rvec(u), grad, dims, rvec(out));
  return dealias(to_spectral(out));
}

SpectralField cross_samples(const PhysicalField& a, const PhysicalField& b) {
  PhysicalField out(a.grid(), 3);
  kernels::cross(rvec(a), rvec(b), rvec(out));
  return dealias(to_spectral(out));
}

namespace {

constexpr int kFluxPair[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};

}  // namespace

void ProductSum::add_transport(const PhysicalField& u, const PhysicalField& v, double coef) {
  for (int t = 0; t < 6; ++t) {
    const auto ui = u.component(kFluxPair[t][0]), uj = u.component(kFluxPair[t][1]);
    const auto vi = v.component(kFluxPair[t][0]), vj = v.component(kFluxPair[t][1]);
    auto dst = flux_.component(t);
    const double h = 0.5 * coef;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dst.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < n; ++m) dst[m] += h * (ui[m] * vj[m] + uj[m] * vi[m]);
  }
  has_flux_ = true;
}

void ProductSum::add_cross(const PhysicalField& a, const PhysicalField& b, double coef) {
  PhysicalField tmp(grid_, 3);
  kernels::cross(rvec(a), rvec(b), rvec(tmp));
  auto dst = vec_.values();
  auto src = tmp.values();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dst.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < n; ++m) dst[m] += coef * src[m];
  has_vec_ = true;
}

SpectralField ProductSum::transform() const {
  SpectralField out = has_vec_ ? to_spectral(vec_) : SpectralField::vector(grid_);
  if (has_flux_) {
    const int dims = grid_.dimension();
    const cplx i{0.0, 1.0};
    std::vector<cplx> work(grid_.size());
    for (int t = 0; t < 6; ++t) {
      const int a = kFluxPair[t][0], b = kFluxPair[t][1];
      // T_ab feeds component a through d_b and component b through d_a
      if (a >= dims && b >= dims) continue;
      grid_.fft().forward_real(flux_.component(t), work);
      auto add = [&](int comp, int dir) {
        auto dst = out.component(comp);
        auto kd = grid_.kd(dir);
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dst.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t m = 0; m < n; ++m) dst[m] += i * kd[m] * work[m];
      };
      if (b < dims) add(a, b);
      if (a != b && a < dims) add(b, a);
    }
  }
  return dealias(out);
}

SpectralField pointwise_product(const SpectralField& u, const SpectralField& v, ProductKind kind) {
  if (!(u.grid() == v.grid())) throw GridMismatch("pointwise_product operands live on different grids");
  require_vector(u, "pointwise_product");
  require_vector(v, "pointwise_product");
  const PhysicalField pu = to_physical(u);
  switch (kind) {
    case ProductKind::advection:
      return advect_samples(pu, physical_gradient(v));
    case ProductKind::cross:
      return cross_samples(pu, to_physical(v));
    case ProductKind::componentwise: {
      PhysicalField pv = to_physical(v);
      auto a = pu.values();
      auto b = pv.values();
      for (std::size_t i = 0; i < b.size(); ++i) b[i] *= a[i];
      return dealias(to_spectral(pv));
    }
  }
  throw InvalidArgument("unknown product kind");
}

double inner(const SpectralField& f, const SpectralField& g) {
  f.require_compatible(g);
  return kernels::inner(f.coeffs(), g.coeffs());
}

double l2_norm(const SpectralField& f) { return std::sqrt(inner(f, f)); }

double l2_norm_quadrature(const SpectralField& f) {
  const PhysicalField p = to_physical(f);
  double s = 0.0;
  for (double x : p.values()) s += x * x;
  return std::sqrt(s * std::pow(f.grid().dx(), f.grid().dimension()));
}

double divergence_residual(const SpectralField& f) {
  require_vector(f, "divergence_residual");
  const Grid& g = f.grid();
  const auto k0 = g.kd(0), k1 = g.kd(1), k2 = g.kd(2), kd2 = g.kd2();
  const auto f0 = f.component(0), f1 = f.component(1), f2 = f.component(2);
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < f.modes(); ++m) {
    const cplx dot = k0[m] * f0[m] + k1[m] * f1[m] + k2[m] * f2[m];
    num = std::max(num, std::norm(dot));
    den = std::max(den, kd2[m] * (std::norm(f0[m]) + std::norm(f1[m]) + std::norm(f2[m])));
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

SpectralField random_field(const Grid& grid, const RandomFieldSpec& spec) {
  SpectralField f = SpectralField::vector(grid);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double unit = 2.0 * std::numbers::pi / grid.length();
  const auto mask = grid.dealias_mask();
  for (std::size_t m = 0; m < grid.size(); ++m) {
    // Draw unconditionally so the stream is independent of the filters.
    std::array<cplx, 3> draw;
    for (auto& d : draw) d = {gauss(rng), gauss(rng)};
    const auto mode = grid.mode(m);
    const double k = std::sqrt(grid.k2()[m]);
    bool keep = k > 0.0 && k <= spec.band * unit;
    for (int a = 0; a < grid.dimension(); ++a) {
      if (mode[a] == grid.n() / 2) keep = false;
    }
    if (spec.dealiased && !mask[m]) keep = false;
    if (spec.k1_parity >= 0 && std::abs(mode[0]) % 2 != spec.k1_parity) keep = false;
    if (!keep) continue;
    const double env = std::pow(k / unit, spec.exponent);
    for (int c = 0; c < 3; ++c) f.at(c, m) = env * draw[static_cast<std::size_t>(c)];
  }
  // In 2D the field is constant in x3, so all three components are free.
  f.symmetrize();
  if (spec.solenoidal) f = leray_project(f);
  if (spec.l2 > 0.0) {
    const double n = l2_norm(f);
    if (n > 0.0) f *= spec.l2 / n;
  }
  return f;
}

}  // namespace nsm
