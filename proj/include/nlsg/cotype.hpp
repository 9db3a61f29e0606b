#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlsg/multigraph.hpp"
#include "nlsg/poincare.hpp"

namespace nlsg {

// n points in R^k, row-major.
struct PointSet {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> x;

  PointSet() = default;
  PointSet(std::size_t n_, std::size_t k_) : n(n_), k(k_), x(n_ * k_, 0.0) {}
  double* row(std::size_t i) { return x.data() + i * k; }
  const double* row(std::size_t i) const { return x.data() + i * k; }
};

// y_i = (1/m) sum_{s<m} (A^s x)_i.
PointSet cesaro_points(const StochasticMatrix& a, std::size_t m, const PointSet& x);

// Right-hand sides below this fraction of sum ||x_i - mean||^2 count as zero.
inline constexpr double kDegenerateRelative = 1e-10;

struct CotypeReport {
  std::size_t m = 0;
  double displacement = 0;  // sum ||x_i - y_i||^2
  double smoothness = 0;    // m * sum a_ij ||y_i - y_j||^2
  double lhs = 0;
  double rhs_base = 0;  // sum (A_m)_ij ||x_i - x_j||^2
  double minimal_c2 = 0;
  double power_form = 0;   // sum (A^m)_ij ||x_i - x_j||^2
  double power_ratio = 0;  // power_form / rhs_base
  bool degenerate = false;  // rhs_base is zero up to rounding
  bool displacement_holds = true;
  std::string binding;  // the larger of the two left-hand terms
};

// Hilbert-space cotype inequality with exponent 1 evaluated at the Cesaro
// points. The displacement comparison allows 1e-12 relative rounding plus
// 1e-12 sum ||x_i||^2.
CotypeReport cotype_check(const StochasticMatrix& a, std::size_t m, const PointSet& x);

struct MartingaleReport {
  std::vector<double> increments;  // E||M_t - M_{t-1}||^2, t = 1..m
  double total = 0;                // E||M_m - M_0||^2
  double increment_sum = 0;
};

// M_t = f_t(Z_t) with f_t = A^(m-t) x along the stationary chain; the chain
// starts at `start` or at a uniform vertex.
MartingaleReport martingale_chain(const StochasticMatrix& a, std::size_t m, const PointSet& x,
                                  std::optional<std::size_t> start = std::nullopt);

struct DecayReport {
  double gamma_a = 0;
  double gamma_cesaro = 0;
  double bound = 0;  // 12 c2 max{1, gamma_a / m}
  bool holds = true;
};

DecayReport decay_check(const StochasticMatrix& a, std::size_t m, double c2);

struct Atom {
  double probability = 0;
  std::vector<double> point;
};

struct BallReport {
  double mean_sq = 0;   // ||E U||^2
  double variance = 0;  // E||U - E U||^2
  double second = 0;    // E||U||^2
  double residual = 0;  // |mean_sq + variance - second| / max(second, 1)
};

BallReport ball_inequality_check(const std::vector<Atom>& atoms);

struct SandwichReport {
  double lower = 0;
  double middle = 0;
  double upper = 0;
  bool holds = true;
};

// (2/5) gamma(double(A)) <= gamma_plus(A) <= 2 gamma(double(A)).
SandwichReport doubling_check(const StochasticMatrix& a, const KernelSpace& k, const ExactOptions& opt = {});
// gamma(double(A_m(A))) <= 9 gamma(A_m(double(A))); lower is unused.
SandwichReport commute_check(const StochasticMatrix& a, std::size_t m, const KernelSpace& k,
                             const ExactOptions& opt = {});

struct EuclideanDecay {
  double gamma_plus = 0;
  double gamma_plus_power = 0;
  double ratio = 0;  // gamma_plus(A^t) / max{1, gamma_plus(A)/t}
  bool in_band = true;
};

// Band for the ratio above. euclidean_decay_sweep(2000, kFrozenC2Seed) spans
// [1, 1.5634825620393802]; both ends are widened by 10%.
inline constexpr double kDecayBandLow = 1.0 / 1.1;
inline constexpr double kDecayBandHigh = 1.5634825620393802 * 1.1;

EuclideanDecay euclidean_decay(const StochasticMatrix& a, std::size_t t);
// Random regular graphs with n <= 128, degree <= 8 and t <= 64; graphs with
// infinite gamma_plus are skipped.
std::vector<EuclideanDecay> euclidean_decay_sweep(std::size_t count, std::uint64_t seed);

struct SweepLimits {
  std::size_t max_n = 128;
  std::size_t max_m = 64;
  std::size_t min_m = 2;
  std::size_t max_k = 4;
  std::size_t max_degree = 8;
};

struct CotypeSample {
  std::size_t n = 0;
  std::size_t degree = 0;
  std::size_t dim = 0;
  int family = 0;
  Multigraph graph;
  CotypeReport report;
};

// Largest minimal_c2 over cotype_sweep(kFrozenC2Count, kFrozenC2Seed) with
// default limits, times 1.1. The sweep maximum was 3.7152318965575137.
inline constexpr std::uint64_t kFrozenC2Seed = 20261016;
inline constexpr std::size_t kFrozenC2Count = 10000;
inline constexpr double kFrozenC2 = 4.0867550862132651;
// Largest power_ratio over the same sweep (3.8424979295520894), times 1.1.
inline constexpr double kFrozenKappa = 4.226747722507299;

// Random regular multigraphs with Gaussian, clustered or smoothed points.
CotypeSample random_cotype_sample(Rng& rng, const SweepLimits& limits);
std::vector<CotypeSample> cotype_sweep(std::size_t count, std::uint64_t seed, const SweepLimits& limits = {});

}  // namespace nlsg
