// Serial reference kernels against their OpenMP counterparts, plus the
// end-to-end right-hand side. Run with --benchmark_filter to narrow.
#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "nsm/dynamics.hpp"
#include "nsm/kernels.hpp"
#include "nsm/spectral_ops.hpp"

namespace kn = nsm::kernels;

namespace {

struct Data {
  nsm::Grid grid;
  std::vector<nsm::cplx> c[3], out[3];
  std::vector<double> r[3], s[3], ro[3];

  explicit Data(int n) : grid(3, n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    for (int a = 0; a < 3; ++a) {
      c[a].resize(grid.size());
      out[a].resize(grid.size());
      r[a].resize(grid.size());
      s[a].resize(grid.size());
      ro[a].resize(grid.size());
      for (auto& x : c[a]) x = {z(rng), z(rng)};
      for (auto& x : r[a]) x = z(rng);
      for (auto& x : s[a]) x = z(rng);
    }
  }
  kn::Wavevector kd() const { return {grid.kd(0), grid.kd(1), grid.kd(2)}; }
};

Data& data(int n) {
  static std::vector<std::unique_ptr<Data>> cache;
  for (auto& d : cache) {
    if (d->grid.n() == n) return *d;
  }
  cache.push_back(std::make_unique<Data>(n));
  return *cache.back();
}

template <bool Parallel>
void BM_leray(benchmark::State& st) {
  Data& d = data(static_cast<int>(st.range(0)));
  const kn::CVec u{d.c[0], d.c[1], d.c[2]};
  for (auto _ : st) {
    if constexpr (Parallel) kn::leray(d.kd(), d.grid.kd2(), u);
    else kn::serial::leray(d.kd(), d.grid.kd2(), u);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(d.grid.size()));
}

template <bool Parallel>
void BM_curl(benchmark::State& st) {
  Data& d = data(static_cast<int>(st.range(0)));
  const kn::CConstVec u{d.c[0], d.c[1], d.c[2]};
  const kn::CVec o{d.out[0], d.out[1], d.out[2]};
  for (auto _ : st) {
    if constexpr (Parallel) kn::curl(d.kd(), u, o);
    else kn::serial::curl(d.kd(), u, o);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(d.grid.size()));
}

template <bool Parallel>
void BM_advect(benchmark::State& st) {
  Data& d = data(static_cast<int>(st.range(0)));
  const kn::RConstVec u{d.r[0], d.r[1], d.r[2]};
  const kn::RConstVec g{d.s[0], d.s[1], d.s[2]};
  const std::array<kn::RConstVec, 3> grad{g, g, g};
  const kn::RVec o{d.ro[0], d.ro[1], d.ro[2]};
  for (auto _ : st) {
    if constexpr (Parallel) kn::advect(u, grad, 3, o);
    else kn::serial::advect(u, grad, 3, o);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(d.grid.size()));
}

template <bool Parallel>
void BM_weighted_sum(benchmark::State& st) {
  Data& d = data(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    double v = Parallel ? kn::weighted_sum_sq(d.c[0], d.grid.k2()) : kn::serial::weighted_sum_sq(d.c[0], d.grid.k2());
    benchmark::DoNotOptimize(v);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(d.grid.size()));
}

void BM_rhs(benchmark::State& st) {
  const nsm::Grid g(3, static_cast<int>(st.range(0)));
  nsm::NsmState s = nsm::NsmState::zero(g);
  for (std::size_t i = 0; i < 4; ++i) {
    nsm::RandomFieldSpec spec;
    spec.seed = i;
    s.fields[i] = nsm::random_field(g, spec);
  }
  const nsm::NsmSystem sys(nsm::PhysicalParams::unit(), nsm::Formulation::physical());
  for (auto _ : st) benchmark::DoNotOptimize(sys.rhs(s));
}

}  // namespace

BENCHMARK(BM_leray<false>)->Name("leray/serial")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_leray<true>)->Name("leray/openmp")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_curl<false>)->Name("curl/serial")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_curl<true>)->Name("curl/openmp")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_advect<false>)->Name("advect/serial")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_advect<true>)->Name("advect/openmp")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_weighted_sum<false>)->Name("weighted_sum_sq/serial")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_weighted_sum<true>)->Name("weighted_sum_sq/openmp")->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_rhs)->Name("rhs")->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
