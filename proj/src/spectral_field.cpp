#include "nsm/spectral_field.hpp"

#include <algorithm>
#include <cmath>

#include "nsm/error.hpp"

namespace nsm {

SpectralField::SpectralField(const Grid& grid, int components)
    : grid_(grid), components_(components) {
  if (components != 1 && components != 3) {
    throw InvalidArgument("fields carry 1 or 3 components");
  }
  coeffs_.assign(static_cast<std::size_t>(components) * grid.size(), cplx{});
}

void SpectralField::require_compatible(const SpectralField& o) const {
  if (!(grid_ == o.grid_)) throw GridMismatch("operands live on different grids");
  if (components_ != o.components_) throw GridMismatch("operands have different component counts");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) { return axpy(1.0, o); }
SpectralField& SpectralField::operator-=(const SpectralField& o) { return axpy(-1.0, o); }

SpectralField& SpectralField::operator*=(double s) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(coeffs_.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) coeffs_[i] *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& x) {
  require_compatible(x);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(coeffs_.size());
  const cplx* xs = x.coeffs_.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) coeffs_[i] += a * xs[i];
  return *this;
}

double SpectralField::max_amplitude() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

void SpectralField::symmetrize() {
  for (int c = 0; c < components_; ++c) {
    auto data = component(c);
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::size_t m = grid_.mirror(i);
      if (m == i) {
        data[i] = {data[i].real(), 0.0};
      } else if (i < m) {
        data[m] = std::conj(data[i]);
      }
    }
  }
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

std::array<double, 3> PhysicalField::point(std::size_t idx) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const std::size_t n = static_cast<std::size_t>(grid_.n());
  for (int a = grid_.dimension() - 1; a >= 0; --a) {
    x[a] = static_cast<double>(idx % n) * grid_.dx();
    idx /= n;
  }
  return x;
}

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField p(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) f.grid().fft().inverse_real(f.component(c), p.component(c));
  return p;
}

SpectralField to_spectral(const PhysicalField& p) {
  SpectralField f(p.grid(), p.components());
  for (int c = 0; c < p.components(); ++c) p.grid().fft().forward_real(p.component(c), f.component(c));
  return f;
}

double realness_defect(const SpectralField& f) {
  double max_imag = 0.0, max_abs = 0.0;
  std::vector<cplx> work(f.modes());
  for (int c = 0; c < f.components(); ++c) {
    std::copy(f.component(c).begin(), f.component(c).end(), work.begin());
    f.grid().fft().inverse(work);
    for (const auto& w : work) {
      max_imag = std::max(max_imag, std::abs(w.imag()));
      max_abs = std::max(max_abs, std::abs(w));
    }
  }
  return max_abs > 0.0 ? max_imag / max_abs : 0.0;
}

}  // namespace nsm
