#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nsm/grid.hpp"

namespace nsm {

/// Fourier coefficients of a real scalar (1 component) or vector (3 component)
/// field on a periodic grid. Component c occupies the contiguous block
/// [c * size, (c+1) * size) of the coefficient array.
class SpectralField {
 public:
  static SpectralField vector(const Grid& grid) { return SpectralField(grid, 3); }
  static SpectralField scalar(const Grid& grid) { return SpectralField(grid, 1); }

  SpectralField(const Grid& grid, int components);

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  std::size_t modes() const noexcept { return grid_.size(); }

  std::span<cplx> component(int c) {
    return {coeffs_.data() + static_cast<std::size_t>(c) * modes(), modes()};
  }
  std::span<const cplx> component(int c) const {
    return {coeffs_.data() + static_cast<std::size_t>(c) * modes(), modes()};
  }
  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }

  cplx& at(int c, std::size_t idx) { return coeffs_[static_cast<std::size_t>(c) * modes() + idx]; }
  cplx at(int c, std::size_t idx) const {
    return coeffs_[static_cast<std::size_t>(c) * modes() + idx];
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  /// this += a * x
  SpectralField& axpy(double a, const SpectralField& x);

  /// Raise GridMismatch unless o has the same grid and component count.
  void require_compatible(const SpectralField& o) const;

  /// Max |coefficient| over all modes and components.
  double max_amplitude() const;
  bool all_finite() const;

  /// Enforce c(-k) = conj(c(k)) by copying from the lower flat index of each
  /// mirror pair; self-mirrored modes keep only their real part.
  void symmetrize();

 private:
  Grid grid_;
  int components_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Grid samples of a real field, component-blocked like SpectralField.
class PhysicalField {
 public:
  PhysicalField(const Grid& grid, int components)
      : grid_(grid), components_(components),
        values_(static_cast<std::size_t>(components) * grid.size(), 0.0) {}

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  std::span<double> component(int c) {
    return {values_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
  }
  std::span<const double> component(int c) const {
    return {values_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
  }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Coordinates of grid point idx (x3 = 0 in 2D).
  std::array<double, 3> point(std::size_t idx) const;

 private:
  Grid grid_;
  int components_;
  std::vector<double> values_;
};

/// Inverse transform. Imaginary parts (round-off for Hermitian input) are
/// dropped.
PhysicalField to_physical(const SpectralField& f);
/// Forward transform of real samples.
SpectralField to_spectral(const PhysicalField& p);

/// max |Im f(x_j)| / max |f(x_j)| after the inverse transform; 0 for a zero
/// field. Near round-off exactly when the coefficients are Hermitian.
double realness_defect(const SpectralField& f);

/// Sample a function of position into a physical field; fn(x, out) writes
/// `components` values.
template <class Fn>
PhysicalField sample(const Grid& grid, int components, Fn&& fn) {
  PhysicalField p(grid, components);
  std::vector<double> out(static_cast<std::size_t>(components));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fn(p.point(i), std::span<double>(out));
    for (int c = 0; c < components; ++c) p.component(c)[i] = out[static_cast<std::size_t>(c)];
  }
  return p;
}

}  // namespace nsm
