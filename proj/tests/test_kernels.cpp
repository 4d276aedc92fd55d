#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "nsm/kernels.hpp"

using namespace nsm;
namespace kn = nsm::kernels;

namespace {

struct Buffers {
  std::vector<cplx> c[3];
  std::vector<double> r[3];
};

Buffers make(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Buffers b;
  for (int a = 0; a < 3; ++a) {
    b.c[a].resize(n);
    b.r[a].resize(n);
    for (auto& x : b.c[a]) x = {z(rng), z(rng)};
    for (auto& x : b.r[a]) x = z(rng);
  }
  return b;
}

kn::CVec cvec(Buffers& b) { return {b.c[0], b.c[1], b.c[2]}; }
kn::CConstVec ccvec(const Buffers& b) { return {b.c[0], b.c[1], b.c[2]}; }
kn::RVec rvec(Buffers& b) { return {b.r[0], b.r[1], b.r[2]}; }
kn::RConstVec rcvec(const Buffers& b) { return {b.r[0], b.r[1], b.r[2]}; }

bool same(const Buffers& a, const Buffers& b) {
  for (int i = 0; i < 3; ++i) {
    if (a.c[i] != b.c[i] || a.r[i] != b.r[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference") {
  const Grid g(3, 32);
  const std::size_t n = g.size();
  const kn::Wavevector kd{g.kd(0), g.kd(1), g.kd(2)};

  SUBCASE("leray") {
    Buffers a = make(n, 1), b = a;
    kn::leray(kd, g.kd2(), cvec(a));
    kn::serial::leray(kd, g.kd2(), cvec(b));
    CHECK(same(a, b));
  }
  SUBCASE("curl and divergence") {
    const Buffers in = make(n, 2);
    Buffers a = make(n, 0), b = make(n, 0);
    kn::curl(kd, ccvec(in), cvec(a));
    kn::serial::curl(kd, ccvec(in), cvec(b));
    CHECK(same(a, b));
    kn::divergence(kd, ccvec(in), a.c[0]);
    kn::serial::divergence(kd, ccvec(in), b.c[0]);
    CHECK(a.c[0] == b.c[0]);
  }
  SUBCASE("symbol, mask, cutoff") {
    Buffers a = make(n, 3), b = a;
    kn::scale_by_symbol(a.c[0], g.k2(), -0.5);
    kn::serial::scale_by_symbol(b.c[0], g.k2(), -0.5);
    kn::apply_mask(a.c[1], g.dealias_mask());
    kn::serial::apply_mask(b.c[1], g.dealias_mask());
    kn::ball_cutoff(a.c[2], g.k2(), 30.0);
    kn::serial::ball_cutoff(b.c[2], g.k2(), 30.0);
    CHECK(same(a, b));
  }
  SUBCASE("point-wise products") {
    const Buffers u = make(n, 4), v = make(n, 5);
    Buffers a = make(n, 0), b = make(n, 0);
    kn::cross(rcvec(u), rcvec(v), rvec(a));
    kn::serial::cross(rcvec(u), rcvec(v), rvec(b));
    CHECK(same(a, b));
    const Buffers g0 = make(n, 6), g1 = make(n, 7), g2 = make(n, 8);
    const std::array<kn::RConstVec, 3> grad{rcvec(g0), rcvec(g1), rcvec(g2)};
    for (int dims : {2, 3}) {
      kn::advect(rcvec(u), grad, dims, rvec(a));
      kn::serial::advect(rcvec(u), grad, dims, rvec(b));
      CHECK(same(a, b));
    }
  }
  SUBCASE("reductions agree to rounding") {
    const Buffers x = make(n, 9), y = make(n, 10);
    const double p = kn::inner(x.c[0], y.c[0]), s = kn::serial::inner(x.c[0], y.c[0]);
    CHECK(std::abs(p - s) <= 1e-12 * std::abs(s) + 1e-12);
    const double pw = kn::weighted_sum_sq(x.c[1], g.k2()), sw = kn::serial::weighted_sum_sq(x.c[1], g.k2());
    CHECK(std::abs(pw - sw) <= 1e-13 * sw);
  }
}

TEST_CASE("parallel reductions do not depend on the thread count") {
  const Buffers x = make(100000, 11), y = make(100000, 12);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = kn::inner(x.c[0], y.c[0]);
  for (int t : {2, 3, 7}) {
    omp_set_num_threads(t);
    CHECK(kn::inner(x.c[0], y.c[0]) == one);
  }
  omp_set_num_threads(saved);
}

TEST_CASE("serial leray against a hand projection") {
  std::vector<double> k0{1.0}, k1{2.0}, k2{0.0}, ksq{5.0};
  std::vector<cplx> u0{1.0}, u1{0.0}, u2{3.0};
  kn::serial::leray({k0, k1, k2}, ksq, {u0, u1, u2});
  // u - k (k.u)/|k|^2 with k.u = 1
  CHECK(std::abs(u0[0] - cplx(0.8)) < 1e-15);
  CHECK(std::abs(u1[0] - cplx(-0.4)) < 1e-15);
  CHECK(std::abs(u2[0] - cplx(3.0)) < 1e-15);
}
