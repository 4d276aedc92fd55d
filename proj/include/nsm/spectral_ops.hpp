#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nsm/spectral_field.hpp"

namespace nsm {

// Fourier-multiplier operators. All are pure and return new fields.

/// Orthogonal projection onto divergence-free fields: u - k (k.u)/|k|^2 per
/// mode; the mean mode is left untouched.
SpectralField leray_project(const SpectralField& f);
/// ik x u.
SpectralField curl(const SpectralField& f);
/// -|k|^2 u, any component count.
SpectralField laplacian(const SpectralField& f);
/// ik s for a scalar field s.
SpectralField gradient(const SpectralField& s);
/// ik . u, returned as a scalar field.
SpectralField divergence(const SpectralField& f);
/// Frequency cutoff onto the closed ball |k| <= k_max. Throws InvalidArgument
/// unless k_max > 0.
SpectralField cutoff(const SpectralField& f, double k_max);
/// 2/3-rule dealiasing mask.
SpectralField dealias(const SpectralField& f);

enum class ProductKind {
  advection,      ///< (u . grad) v
  cross,          ///< u x v
  componentwise,  ///< (u1 v1, u2 v2, u3 v3)
};

/// Pseudo-spectral product: both operands go to physical space, the product
/// is formed point-wise, transformed back and dealiased. Throws GridMismatch
/// for operands on different grids.
SpectralField pointwise_product(const SpectralField& u, const SpectralField& v, ProductKind kind);

/// Physical samples of the first derivatives of v: entry j holds d_j v (all
/// components) for j < dimension.
using GradientSamples = std::vector<PhysicalField>;
GradientSamples physical_gradient(const SpectralField& v);

/// Dealiased spectral transform of (u . grad) v from physical samples.
SpectralField advect_samples(const PhysicalField& u, const GradientSamples& grad_v);
/// Dealiased spectral transform of a x b from physical samples.
SpectralField cross_samples(const PhysicalField& a, const PhysicalField& b);

/// Quadratic terms summed on the grid and transformed once. Transport
/// terms are kept in divergence form, which for divergence-free fields
/// needs the symmetric flux components instead of a full gradient.
class ProductSum {
 public:
  explicit ProductSum(const Grid& g) : grid_(g), flux_(g, 6), vec_(g, 3) {}
  /// Adds coef [(u . grad) v + (v . grad) u] / 2, as the divergence of the
  /// symmetrized u (x) v; u and v must be divergence-free.
  void add_transport(const PhysicalField& u, const PhysicalField& v, double coef = 1.0);
  /// Adds coef a x b.
  void add_cross(const PhysicalField& a, const PhysicalField& b, double coef = 1.0);
  /// Dealiased spectral transform of the sum.
  SpectralField transform() const;

 private:
  Grid grid_;
  PhysicalField flux_;  ///< symmetric tensor: 00 01 02 11 12 22
  PhysicalField vec_;
  bool has_flux_ = false;
  bool has_vec_ = false;
};

/// Re <f, g> = sum over modes and components of conj(f) g; equals the box
/// integral of f . g.
double inner(const SpectralField& f, const SpectralField& g);
double l2_norm(const SpectralField& f);
/// Physical-space L^2 norm by the rectangle rule on grid samples.
double l2_norm_quadrature(const SpectralField& f);
/// Max over modes of |k . f(k)| divided by max over modes of |k| |f(k)|; 0 for
/// a field with no nonzero-wavenumber content. Dimensionless, 1 for a pure
/// gradient.
double divergence_residual(const SpectralField& f);

/// Parameters of the fixed-seed random field generator.
struct RandomFieldSpec {
  std::uint64_t seed = 0;
  /// Only modes with 0 < |k| <= band are populated (integer-lattice units
  /// scaled by 2*pi/L); Nyquist modes are always empty.
  double band = 4.0;
  /// Amplitude envelope |k|^exponent.
  double exponent = -2.0;
  /// Target L^2 norm after projection; <= 0 keeps the raw scale.
  double l2 = 1.0;
  /// Populate only modes whose first integer wavenumber has this parity
  /// (0 even, 1 odd); -1 means no restriction.
  int k1_parity = -1;
  /// Project onto divergence-free fields.
  bool solenoidal = true;
  /// Keep only modes retained by the dealiasing rule.
  bool dealiased = true;
};

/// Gaussian random vector field with Hermitian coefficients.
SpectralField random_field(const Grid& grid, const RandomFieldSpec& spec);

}  // namespace nsm
