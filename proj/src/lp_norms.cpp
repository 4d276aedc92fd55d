#include "nsm/lp_norms.hpp"

#include <algorithm>
#include <cmath>

#include "nsm/error.hpp"
#include "nsm/kernels.hpp"

namespace nsm {

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
  const auto k2 = f.grid().k2();
  std::vector<double> w(k2.size());
  for (std::size_t m = 0; m < k2.size(); ++m) {
    if (!homogeneous) {
      w[m] = std::pow(1.0 + k2[m], s);
    } else if (k2[m] > 0.0) {
      w[m] = std::pow(k2[m], s);
    } else {
      w[m] = s == 0.0 ? 1.0 : 0.0;
    }
  }
  if (homogeneous && s < 0.0) {
    double mean = 0.0;
    for (int c = 0; c < f.components(); ++c) mean = std::max(mean, std::abs(f.at(c, 0)));
    if (mean > 1e-14 * std::max(1.0, f.max_amplitude())) {
      throw UndefinedNorm("homogeneous Sobolev norm of negative order needs a mean-free field");
    }
  }
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c) sum += kernels::weighted_sum_sq(f.component(c), w);
  return std::sqrt(sum);
}

int dyadic_index(double k2) {
  // q = ceil((log2 |k|^2 - 1) / 2); ties 2^{q+1/2} resolve to the lower q.
  return static_cast<int>(std::ceil(0.5 * (std::log2(k2) - 1.0)));
}

DyadicBlocks DyadicBlocks::decompose(const SpectralField& f, bool homogeneous) {
  const Grid& g = f.grid();
  const auto k2 = g.k2();
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (std::size_t m = 0; m < k2.size(); ++m) {
    if (k2[m] == 0.0) continue;
    const int q = dyadic_index(k2[m]);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  DyadicBlocks out(g, homogeneous);
  out.q_min_ = lo;
  out.blocks_.assign(static_cast<std::size_t>(hi - lo + 1), SpectralField(g, f.components()));
  for (std::size_t m = 0; m < k2.size(); ++m) {
    int q;
    if (k2[m] == 0.0) {
      if (homogeneous) continue;
      q = lo;
    } else {
      q = dyadic_index(k2[m]);
    }
    auto& b = out.blocks_[static_cast<std::size_t>(q - lo)];
    for (int c = 0; c < f.components(); ++c) b.at(c, m) = f.at(c, m);
  }
  return out;
}

SpectralField DyadicBlocks::block(int q) const {
  if (q < q_min() || q > q_max()) return SpectralField(grid_, blocks_.front().components());
  return blocks_[static_cast<std::size_t>(q - q_min_)];
}

SpectralField DyadicBlocks::low_pass(int q) const {
  SpectralField out(grid_, blocks_.front().components());
  for (int j = q_min(); j <= std::min(q - 1, q_max()); ++j) {
    out += blocks_[static_cast<std::size_t>(j - q_min_)];
  }
  return out;
}

SpectralField DyadicBlocks::reconstruct() const { return low_pass(q_max() + 1); }

std::map<int, double> DyadicBlocks::block_norms() const {
  std::map<int, double> out;
  for (int q = q_min(); q <= q_max(); ++q) {
    const auto& b = blocks_[static_cast<std::size_t>(q - q_min_)];
    const double n = std::sqrt(kernels::inner(b.coeffs(), b.coeffs()));
    if (n > 0.0) out[q] = n;
  }
  return out;
}

std::vector<int> DyadicBlocks::nonempty() const {
  const auto norms = block_norms();
  double total = 0.0;
  for (const auto& [q, n] : norms) total = std::max(total, n);
  std::vector<int> out;
  for (const auto& [q, n] : norms) {
    if (n > kBlockRoundoff * total) out.push_back(q);
  }
  return out;
}

double block_sobolev_norm(const SpectralField& f, double s) {
  const auto blocks = DyadicBlocks::decompose(f, false);
  double sum = 0.0;
  for (const auto& [q, n] : blocks.block_norms()) {
    sum += std::pow(1.0 + std::ldexp(1.0, 2 * q), s) * n * n;
  }
  return std::sqrt(sum);
}

double time_norm(const std::vector<double>& values, double dt, double r) {
  if (values.empty()) throw InvalidArgument("time norm of an empty series");
  if (!(r >= 1.0)) throw InvalidArgument("time exponent must be >= 1");
  if (std::isinf(r)) return *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += std::pow(v, r);
  return std::pow(sum * dt, 1.0 / r);
}

double chemin_lerner_norm(const BlockNormSeries& series, double s, double r) {
  if (series.samples.empty()) throw InvalidArgument("Chemin-Lerner norm of an empty series");
  if (!(series.dt > 0.0)) throw InvalidArgument("series time step must be positive");
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto& sample : series.samples) {
    if (sample.empty()) continue;
    lo = std::min(lo, sample.begin()->first);
    hi = std::max(hi, sample.rbegin()->first);
  }
  if (lo > hi) return 0.0;
  double sum = 0.0;
  std::vector<double> history(series.samples.size());
  for (int q = lo; q <= hi; ++q) {
    for (std::size_t i = 0; i < series.samples.size(); ++i) {
      const auto it = series.samples[i].find(q);
      history[i] = it == series.samples[i].end() ? 0.0 : it->second;
    }
    const double w = series.homogeneous ? std::pow(2.0, q * s)
                                        : std::pow(1.0 + std::pow(2.0, q), s);
    const double block = w * time_norm(history, series.dt, r);
    sum += block * block;
  }
  return std::sqrt(sum);
}

void NormSeries::push(double t, double value) {
  if (!times.empty() && !(t > times.back())) {
    throw InvalidArgument("norm series timestamps must increase strictly");
  }
  if (!(value >= 0.0)) throw InvalidArgument("norm series values must be non-negative");
  times.push_back(t);
  values.push_back(value);
}

double xv_norm(const std::vector<SpectralField>& samples, double dt) {
  if (samples.empty()) throw InvalidArgument("X^v norm of an empty series");
  XvMonitor m;
  for (const auto& v : samples) m.add(v, dt);
  return m.value();
}

void XvMonitor::add(const SpectralField& v, double dt) {
  sup_half_ = std::max(sup_half_, sobolev_norm(v, 0.5, true));
  const double h = sobolev_norm(v, 1.5, true);
  integral_ += h * h * dt;
}

double XvMonitor::l2_three_halves() const noexcept { return std::sqrt(integral_); }

double XvMonitor::value() const noexcept { return std::max(sup_half_, l2_three_halves()); }

}  // namespace nsm
