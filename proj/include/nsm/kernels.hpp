#pragma once

// Mode-wise and point-wise inner loops of the spectral core.
//
// Every kernel exists twice: the OpenMP version in nsm::kernels, used by the
// library, and a plain serial version in nsm::kernels::serial that is kept as
// the reference for tests and benchmarks. Both take the same arguments.
// Reductions in the parallel versions sum fixed-size chunks and then combine
// the partial sums in chunk order, so results do not depend on thread count.

#include <array>
#include <span>

#include "nsm/grid.hpp"

namespace nsm::kernels {

using CVec = std::array<std::span<cplx>, 3>;
using CConstVec = std::array<std::span<const cplx>, 3>;
using RVec = std::array<std::span<double>, 3>;
using RConstVec = std::array<std::span<const double>, 3>;
using Wavevector = std::array<std::span<const double>, 3>;

/// u <- u - kd (kd . u) / |kd|^2, in place; modes with kd = 0 untouched.
void leray(const Wavevector& kd, std::span<const double> kd2, const CVec& u);
/// out = i kd x u.
void curl(const Wavevector& kd, const CConstVec& u, const CVec& out);
/// out = i kd . u.
void divergence(const Wavevector& kd, const CConstVec& u, std::span<cplx> out);
/// data <- scale * symbol * data.
void scale_by_symbol(std::span<cplx> data, std::span<const double> symbol, double scale);
/// Zero every coefficient whose mask entry is 0.
void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask);
/// Zero every coefficient with k2 > k2_max.
void ball_cutoff(std::span<cplx> data, std::span<const double> k2, double k2_max);
/// out = a x b, point-wise.
void cross(const RConstVec& a, const RConstVec& b, const RVec& out);
/// out_i = sum_j u_j grad[i][j], point-wise; only the first `dims` columns of
/// grad are read.
void advect(const RConstVec& u, const std::array<RConstVec, 3>& grad, int dims, const RVec& out);
/// sum_k w_k |c_k|^2.
double weighted_sum_sq(std::span<const cplx> data, std::span<const double> weight);
/// Re sum_k conj(a_k) b_k.
double inner(std::span<const cplx> a, std::span<const cplx> b);

namespace serial {
void leray(const Wavevector& kd, std::span<const double> kd2, const CVec& u);
void curl(const Wavevector& kd, const CConstVec& u, const CVec& out);
void divergence(const Wavevector& kd, const CConstVec& u, std::span<cplx> out);
void scale_by_symbol(std::span<cplx> data, std::span<const double> symbol, double scale);
void apply_mask(std::span<cplx> data, std::span<const unsigned char> mask);
void ball_cutoff(std::span<cplx> data, std::span<const double> k2, double k2_max);
void cross(const RConstVec& a, const RConstVec& b, const RVec& out);
void advect(const RConstVec& u, const std::array<RConstVec, 3>& grad, int dims, const RVec& out);
double weighted_sum_sq(std::span<const cplx> data, std::span<const double> weight);
double inner(std::span<const cplx> a, std::span<const cplx> b);
}  // namespace serial

}  // namespace nsm::kernels
