#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace nsm {

using cplx = std::complex<double>;

class FftPlan;

/// Uniform periodic grid on the box [0, L)^d.
///
/// Modes are stored in FFT order: along each axis, array index i carries the
/// integer wavenumber i for i <= N/2 and i - N above. The physical wavevector
/// is that integer times 2*pi/L. In d = 2 the third wavevector component is
/// identically zero (fields are constant in x3).
///
/// Grid is a cheap value type; lookup tables and the FFT plan are shared.
class Grid {
 public:
  Grid(int dimension, int points_per_axis, double length = 2.0 * std::numbers::pi);

  int dimension() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / n_; }
  /// Number of grid points, equal to the number of stored modes.
  std::size_t size() const noexcept { return size_; }

  /// Integer wavenumbers (k3 = 0 in 2D) of the mode at flat index idx.
  std::array<int, 3> mode(std::size_t idx) const;
  /// Flat index of the mode with integer wavenumbers m (each in (-N/2, N/2]).
  std::size_t index_of(std::array<int, 3> m) const;
  /// Flat index of the mode -k.
  std::size_t mirror(std::size_t idx) const { return tables_->mirror[idx]; }

  /// Squared physical wavenumber |k|^2 (Nyquist components included).
  std::span<const double> k2() const { return tables_->k2; }
  /// Physical derivative wavevector, Nyquist components set to zero so that
  /// odd symbols (ik) preserve Hermitian symmetry.
  std::span<const double> kd(int axis) const { return tables_->kd[axis]; }
  /// |kd|^2.
  std::span<const double> kd2() const { return tables_->kd2; }
  /// 1 for modes kept by the 2/3 dealiasing rule, 0 otherwise.
  std::span<const unsigned char> dealias_mask() const { return tables_->mask; }

  /// Largest |k_i| (integer) retained by the dealiasing rule: floor((N-1)/3),
  /// the largest K with 3K < N.
  int dealias_cutoff() const noexcept { return (n_ - 1) / 3; }
  /// Number of modes kept by the dealiasing rule, (2K+1)^d.
  std::size_t retained_mode_count() const noexcept;
  /// Largest physical |k| represented on the grid (corner of the Nyquist cube).
  double max_wavenumber() const noexcept;

  const FftPlan& fft() const { return *plan_; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  struct Tables {
    std::vector<double> k2;
    std::array<std::vector<double>, 3> kd;
    std::vector<double> kd2;
    std::vector<unsigned char> mask;
    std::vector<std::size_t> mirror;
  };

  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  std::shared_ptr<const Tables> tables_;
  std::shared_ptr<const FftPlan> plan_;
};

/// In-place unitary transforms between grid samples and spectral coefficients.
///
/// forward: c_k = (L^{d/2} / N^d) sum_j f_j exp(-i k.x_j)
/// inverse: f_j = L^{-d/2} sum_k c_k exp(i k.x_j)
///
/// With this scaling sum_k |c_k|^2 equals the box integral of |f|^2, so L^2
/// norms need no extra factors in either space.
class FftPlan {
 public:
  FftPlan(int dimension, int n, double length);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::span<cplx> data) const;
  void inverse(std::span<cplx> data) const;

  /// Real-to-complex transform of `in`; the full spectrum is written to
  /// `out`, the redundant half filled in by Hermitian symmetry.
  void forward_real(std::span<const double> in, std::span<cplx> out) const;
  /// Real part of the inverse transform of `in`, computed from its Hermitian
  /// part with a complex-to-real transform.
  void inverse_real(std::span<const cplx> in, std::span<double> out) const;

 private:
  void* forward_plan_;
  void* inverse_plan_;
  void* r2c_plan_;
  void* c2r_plan_;
  std::size_t n_;
  std::size_t half_;                   ///< n/2 + 1 stored modes along the last axis
  std::vector<std::size_t> row_mirror_;  ///< row of -k over the leading axes
  std::size_t size_;
  double forward_scale_;
  double inverse_scale_;
};

}  // namespace nsm
