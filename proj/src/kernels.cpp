#include "nsm/kernels.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace nsm::kernels {

namespace {

constexpr std::ptrdiff_t kChunk = 4096;

const cplx kI{0.0, 1.0};

template <class F>
double chunked_sum(std::ptrdiff_t n, F&& term) {
  const std::ptrdiff_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::ptrdiff_t lo = c * kChunk;
    const std::ptrdiff_t hi = lo + kChunk < n ? lo + kChunk : n;
    double s = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

inline void leray_one(const Wavevector& kd, std::span<const double> kd2, const CVec& u,
                      std::size_t i) {
  if (kd2[i] == 0.0) return;
  const cplx dot = kd[0][i] * u[0][i] + kd[1][i] * u[1][i] + kd[2][i] * u[2][i];
  const cplx s = dot / kd2[i];
  u[0][i] -= kd[0][i] * s;
  u[1][i] -= kd[1][i] * s;
  u[2][i] -= kd[2][i] * s;
}

inline void curl_one(const Wavevector& kd, const CConstVec& u, const CVec& out, std::size_t i) {
  const double kx = kd[0][i], ky = kd[1][i], kz = kd[2][i];
  const cplx ux = u[0][i], uy = u[1][i], uz = u[2][i];
  out[0][i] = kI * (ky * uz - kz * uy);
  out[1][i] = kI * (kz * ux - kx * uz);
  out[2][i] = kI * (kx * uy - ky * ux);
}

inline void cross_one(const RConstVec& a, const RConstVec& b, const RVec& out, std::size_t i) {
  const double ax = a[0][i], ay = a[1][i], az = a[2][i];
  const double bx = b[0][i], by = b[1][i], bz = b[2][i];
  out[0][i] = ay * bz - az * by;
  out[1][i] = az * bx - ax * bz;
  out[2][i] = ax * by - ay * bx;
}

inline void advect_one(const RConstVec& u, const std::array<RConstVec, 3>& grad, int dims,
                       const RVec& out, std::size_t i) {
  for (int c = 0; c < 3; ++c) {
    double s = 0.0;
    for (int j = 0; j < dims; ++j) s += u[j][i] * grad[c][j][i];
    out[c][i] = s;
  }
}

}  // namespace

void leray(const Wavevector& kd, std::span<const double> kd2, const CVec& u) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(kd2.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) leray_one(kd, kd2, u, static_cast<std::size_t>(i));
}

void curl(const Wavevector& kd, const CConstVec& u, const CVec& out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(kd[0].size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) curl_one(kd, u, out, static_cast<std::size_t>(i));
}

void divergence(const Wavevector& kd, const CConstVec& u, std::span<cplx> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = kI * (kd[0][i] * u[0][i] + kd[1][i] * u[1][i] + kd[2][i] * u[2][i]);
  }
}

void scale_by_symbol(std::span<cplx> data, std::span<const double> symbol, double scale) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) data[i] *= scale * symbol[i];
}

void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!mask[i]) data[i] = cplx{};
  }
}

void ball_cutoff(std::span<cplx> data, std::span<const double> k2, double k2_max) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (k2[i] > k2_max) data[i] = cplx{};
  }
}

void cross(const RConstVec& a, const RConstVec& b, const RVec& out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out[0].size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) cross_one(a, b, out, static_cast<std::size_t>(i));
}

void advect(const RConstVec& u, const std::array<RConstVec, 3>& grad, int dims, const RVec& out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out[0].size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) advect_one(u, grad, dims, out, static_cast<std::size_t>(i));
}

double weighted_sum_sq(std::span<const cplx> data, std::span<const double> weight) {
  return chunked_sum(static_cast<std::ptrdiff_t>(data.size()),
                     [&](std::ptrdiff_t i) { return weight[i] * std::norm(data[i]); });
}

double inner(std::span<const cplx> a, std::span<const cplx> b) {
  return chunked_sum(static_cast<std::ptrdiff_t>(a.size()), [&](std::ptrdiff_t i) {
    return a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  });
}

namespace serial {

void leray(const Wavevector& kd, std::span<const double> kd2, const CVec& u) {
  for (std::size_t i = 0; i < kd2.size(); ++i) leray_one(kd, kd2, u, i);
}

void curl(const Wavevector& kd, const CConstVec& u, const CVec& out) {
  for (std::size_t i = 0; i < kd[0].size(); ++i) curl_one(kd, u, out, i);
}

void divergence(const Wavevector& kd, const CConstVec& u, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = kI * (kd[0][i] * u[0][i] + kd[1][i] * u[1][i] + kd[2][i] * u[2][i]);
  }
}

void scale_by_symbol(std::span<cplx> data, std::span<const double> symbol, double scale) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= scale * symbol[i];
}

void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!mask[i]) data[i] = cplx{};
  }
}

void ball_cutoff(std::span<cplx> data, std::span<const double> k2, double k2_max) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (k2[i] > k2_max) data[i] = cplx{};
  }
}

void cross(const RConstVec& a, const RConstVec& b, const RVec& out) {
  for (std::size_t i = 0; i < out[0].size(); ++i) cross_one(a, b, out, i);
}

void advect(const RConstVec& u, const std::array<RConstVec, 3>& grad, int dims, const RVec& out) {
  for (std::size_t i = 0; i < out[0].size(); ++i) advect_one(u, grad, dims, out, i);
}

double weighted_sum_sq(std::span<const cplx> data, std::span<const double> weight) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) s += weight[i] * std::norm(data[i]);
  return s;
}

double inner(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
  return s;
}

}  // namespace serial

}  // namespace nsm::kernels
