#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsm/lp_norms.hpp"
#include "nsm/spectral_field.hpp"

namespace nsm {

/// Samples whose right-hand side falls below this are discarded.
inline constexpr double kMinRhs = 1e-12;

struct RatioSample {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct CorpusDescriptor {
  std::string family;
  int dimension = 0;
  int n = 0;
  int count = 0;
};

/// Finite-sample study of an inequality LHS <= const * RHS.
struct RatioStudy {
  std::string tag;
  CorpusDescriptor corpus;
  std::vector<RatioSample> samples;
  int discarded = 0;
  /// Probe-specific side results (self checks, secondary ratios).
  std::map<std::string, double> extras;

  /// Keeps the sample unless rhs < kMinRhs, in which case it is counted as
  /// discarded.
  void add(double lhs, double rhs);
  /// Throw InvalidArgument when every sample was discarded.
  double max_ratio() const;
  double median_ratio() const;
  void require_nondegenerate() const;
};

// ---------------------------------------------------------------- products

enum class ProductTag { est1, est3, pe1, pe2, pe3, pe4 };

/// Accepts "2.1", "2.1-form", "2.3", "2.3-form", "PE1" .. "PE4".
ProductTag parse_product_tag(const std::string& s);
std::string to_string(ProductTag t);
/// 2 for the 2.1/2.3 forms, 3 for PE1-PE4.
int product_dimension(ProductTag t);

struct ProductCorpus {
  int n = 64;
  int count = 100;
  std::uint64_t seed = 1;
  double s = 0.5;           ///< Sobolev index of the 2.1/2.3 forms
  double band = 4.0;        ///< frequency band of the random fields
  double mu = 0.1;          ///< heat-flow rate of the synthetic trajectories
  double horizon = 1.0;
  int time_samples = 8;
};

/// Default corpus for a tag at resolution n.
ProductCorpus default_product_corpus(ProductTag t, int n);

/// Heat-flow trajectory exp(mu t Laplacian) u0 sampled at t_i = i dt,
/// dt = horizon / count (left-endpoint layout of the time norms).
struct Trajectory {
  double dt = 0.0;
  std::vector<SpectralField> samples;
};
Trajectory heat_trajectory(const SpectralField& u0, double mu, double horizon, int count);

/// (LHS, RHS) of ||uv||_{Hdot^{s-d/2}} <~ ||u||_{H^s} ||v||_{L^2}, uv the
/// tensor product with its mean removed.
std::pair<double, double> est1_terms(const SpectralField& u, const SpectralField& v, double s);
/// (LHS, RHS) of ||(u.grad)v||_{H^{s-1}} <~ ||u|| ||v||_{H^1} + ||u||_{H^1} ||v||_{Hdot^1}.
std::pair<double, double> est3_terms(const SpectralField& u, const SpectralField& v, double s);
/// (LHS, RHS) of a PE tag on two trajectories sharing dt.
std::pair<double, double> space_time_terms(ProductTag t, const Trajectory& u, const Trajectory& v,
                                           double horizon);

/// Unaliased products: the fields must be band limited so that the product
/// spectrum fits the grid.
SpectralField product_advection(const SpectralField& u, const SpectralField& v);
SpectralField product_cross(const SpectralField& a, const SpectralField& b);

/// Throws InvalidArgument on a degenerate corpus.
RatioStudy probe_product_estimate(ProductTag t, const ProductCorpus& corpus);

// ------------------------------------------------------------ heat semigroup

struct HeatProbeConfig {
  double p = 2.0;            ///< time exponent of the smoothing norm (kTimeInfinity allowed)
  double r1 = 1.0;           ///< time exponent of the forcing norm
  double s = 0.0;
  double mu = 1.0;
  double a = 0.0;            ///< friction
  double horizon = 1.0;
  int n = 256;               ///< 2D grid
  int count = 28;
  int q_max = 6;             ///< corpus shells q = 0 .. q_max
  std::uint64_t seed = 7;
};

/// Solutions of d_t u + a u - mu Lap u = f with time-constant f are
/// evaluated mode by mode in closed form; time norms use graded
/// Gauss-Legendre quadrature. extras["duhamel_gap"] is the largest relative
/// gap between the closed-form Duhamel integral and its quadrature.
/// Throws InvalidArgument unless p >= r1 >= 1 and mu > 0, a >= 0.
RatioStudy probe_heat_semigroup(const HeatProbeConfig& cfg);

/// (LHS, RHS) of the smoothing estimate for one datum u0 (grid taken from
/// u0) with time-constant forcing f.
std::pair<double, double> heat_estimate_terms(const SpectralField& u0, const SpectralField& f,
                                              const HeatProbeConfig& cfg);

/// (max - min) / min of the max ratios over the friction values.
double friction_spread(HeatProbeConfig cfg, const std::vector<double>& frictions);

/// Closed-form heat/friction solution of one mode with constant forcing:
/// exp(-lambda t) u0 + (1 - exp(-lambda t)) / lambda f, lambda = a + mu k^2.
double heat_mode(double u0, double f, double lambda, double t);

// -------------------------------------------------------------- Maxwell

struct MaxwellProbeConfig {
  int n = 32;                ///< 2D grid
  int count = 20;
  double s = 0.0;
  double horizon = 1.0;
  double dt = 1e-3;
  std::uint64_t seed = 11;
};

/// Unit Maxwell system with forcing f on E, integrated by the stepper.
/// The ratio is sup_t (||E||^2 + ||B||^2)^{1/2} over
/// ||E0|| + ||B0|| + ||f||_{L^1_T} (all H^s). The literal
/// sup||E|| + sup||B|| ratio is reported in extras["literal_max_ratio"].
RatioStudy probe_maxwell_bound(const MaxwellProbeConfig& cfg);

}  // namespace nsm
