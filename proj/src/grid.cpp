#include "nsm/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

#include "nsm/error.hpp"

namespace nsm {

namespace {

// The FFTW planner is not thread-safe; execution of existing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

FftPlan::FftPlan(int dimension, int n, double length) {
  size_ = 1;
  for (int a = 0; a < dimension; ++a) size_ *= static_cast<std::size_t>(n);
  n_ = static_cast<std::size_t>(n);
  half_ = n_ / 2 + 1;
  std::vector<int> dims(static_cast<std::size_t>(dimension), n);
  fftw_complex* probe = fftw_alloc_complex(size_);
  double* real_probe = fftw_alloc_real(size_);
  {
    std::lock_guard lock(planner_mutex());
    // ESTIMATE keeps plan selection independent of timing, so reruns are
    // bit-identical.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_plan_ = fftw_plan_dft(dimension, dims.data(), probe, probe, FFTW_FORWARD, flags);
    inverse_plan_ = fftw_plan_dft(dimension, dims.data(), probe, probe, FFTW_BACKWARD, flags);
    r2c_plan_ = fftw_plan_dft_r2c(dimension, dims.data(), real_probe, probe, flags);
    c2r_plan_ = fftw_plan_dft_c2r(dimension, dims.data(), probe, real_probe, flags);
  }
  fftw_free(real_probe);
  fftw_free(probe);

  // leading axes are row-major, so negating them maps row r to a fixed row
  const std::size_t rows = size_ / n_;
  row_mirror_.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rest = r, mirrored = 0, stride = 1;
    for (int a = 0; a < dimension - 1; ++a) {
      const std::size_t i = rest % n_;
      rest /= n_;
      mirrored += ((n_ - i) % n_) * stride;
      stride *= n_;
    }
    row_mirror_[r] = mirrored;
  }
  const double half_volume = std::pow(length, 0.5 * dimension);
  forward_scale_ = half_volume / static_cast<double>(size_);
  inverse_scale_ = 1.0 / half_volume;
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_plan_));
}

void FftPlan::forward(std::span<cplx> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), p, p);
  for (auto& c : data) c *= forward_scale_;
}

void FftPlan::inverse(std::span<cplx> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), p, p);
  for (auto& c : data) c *= inverse_scale_;
}

void FftPlan::forward_real(std::span<const double> in, std::span<cplx> out) const {
  const std::size_t rows = size_ / n_;
  std::vector<cplx> half(rows * half_);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(half.data()));
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx* h = half.data() + r * half_;
    const cplx* hm = half.data() + row_mirror_[r] * half_;
    cplx* o = out.data() + r * n_;
    for (std::size_t j = 0; j < half_; ++j) o[j] = forward_scale_ * h[j];
    for (std::size_t j = half_; j < n_; ++j) o[j] = forward_scale_ * std::conj(hm[n_ - j]);
  }
}

void FftPlan::inverse_real(std::span<const cplx> in, std::span<double> out) const {
  const std::size_t rows = size_ / n_;
  std::vector<cplx> half(rows * half_);
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx* f = in.data() + r * n_;
    const cplx* fm = in.data() + row_mirror_[r] * n_;
    cplx* h = half.data() + r * half_;
    for (std::size_t j = 0; j < half_; ++j) h[j] = 0.5 * inverse_scale_ * (f[j] + std::conj(fm[(n_ - j) % n_]));
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_plan_), reinterpret_cast<fftw_complex*>(half.data()),
                       out.data());
}

Grid::Grid(int dimension, int points_per_axis, double length)
    : dim_(dimension), n_(points_per_axis), length_(length) {
  if (dim_ != 2 && dim_ != 3) {
    throw InvalidArgument("grid dimension must be 2 or 3, got " + std::to_string(dim_));
  }
  if (n_ < 8 || n_ % 2 != 0) {
    throw InvalidArgument("points per axis must be even and >= 8, got " + std::to_string(n_));
  }
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw InvalidArgument("grid period must be positive");
  }
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);

  auto t = std::make_shared<Tables>();
  t->k2.resize(size_);
  for (auto& v : t->kd) v.assign(size_, 0.0);
  t->kd2.resize(size_);
  t->mask.resize(size_);
  t->mirror.resize(size_);
  const double unit = 2.0 * std::numbers::pi / length_;
  const int cut = dealias_cutoff();
  for (std::size_t idx = 0; idx < size_; ++idx) {
    const auto m = mode(idx);
    double k2 = 0.0, kd2 = 0.0;
    bool kept = true;
    for (int a = 0; a < dim_; ++a) {
      const double k = unit * m[a];
      k2 += k * k;
      const double kd = (m[a] == n_ / 2) ? 0.0 : k;
      t->kd[a][idx] = kd;
      kd2 += kd * kd;
      if (std::abs(m[a]) > cut) kept = false;
    }
    t->k2[idx] = k2;
    t->kd2[idx] = kd2;
    t->mask[idx] = kept ? 1 : 0;
    std::array<int, 3> neg{0, 0, 0};
    for (int a = 0; a < dim_; ++a) neg[a] = (m[a] == n_ / 2) ? m[a] : -m[a];
    t->mirror[idx] = index_of(neg);
  }
  tables_ = std::move(t);
  plan_ = std::make_shared<const FftPlan>(dim_, n_, length_);
}

std::array<int, 3> Grid::mode(std::size_t idx) const {
  std::array<int, 3> m{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    const int i = static_cast<int>(idx % static_cast<std::size_t>(n_));
    idx /= static_cast<std::size_t>(n_);
    m[a] = wavenumber(i, n_);
  }
  return m;
}

std::size_t Grid::index_of(std::array<int, 3> m) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) {
    int i = m[a] < 0 ? m[a] + n_ : m[a];
    if (i < 0 || i >= n_) throw InvalidArgument("wavenumber outside the grid");
    idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return idx;
}

std::size_t Grid::retained_mode_count() const noexcept {
  std::size_t per_axis = static_cast<std::size_t>(2 * dealias_cutoff() + 1);
  std::size_t count = 1;
  for (int a = 0; a < dim_; ++a) count *= per_axis;
  return count;
}

double Grid::max_wavenumber() const noexcept {
  return (2.0 * std::numbers::pi / length_) * (n_ / 2) * std::sqrt(static_cast<double>(dim_));
}

}  // namespace nsm
