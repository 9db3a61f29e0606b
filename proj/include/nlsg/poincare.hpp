#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlsg/multigraph.hpp"

namespace nlsg {

// Finite kernel K: X x X -> [0, inf) on points 0..points-1.
struct KernelSpace {
  std::size_t points = 0;
  std::vector<double> values;
  std::string label;

  double operator()(std::size_t x, std::size_t y) const { return values[x * points + y]; }
  // Constant diagonal and constant off-diagonal, so every permutation of the
  // points is a symmetry.
  bool uniform() const;
};

KernelSpace make_kernel(std::size_t points, std::vector<double> values, std::string label);
// Discrete metric on the given number of points raised to any power.
KernelSpace uniform_kernel(std::size_t points);
inline KernelSpace two_point_kernel() { return uniform_kernel(2); }
// d^p for a metric d given as a row-major table; the metric axioms are checked
// up to a relative 1e-12.
KernelSpace metric_kernel(std::size_t points, const std::vector<double>& d, double p, std::string label = "metric^p");
// ||x - y||_q^p for points in R^k; q <= 0 selects the max norm.
KernelSpace metric_power_kernel(const std::vector<std::vector<double>>& pts, double p, double q = 2.0);
// (log(1 + ||x - y||_inf))^p.
KernelSpace log_linf_kernel(const std::vector<std::vector<double>>& pts, double p);

struct Witness {
  std::vector<std::uint32_t> f;
  std::vector<std::uint32_t> g;
};

enum class EstimateKind { Exact, LowerBound };

struct PoincareEstimate {
  double value = 1.0;
  EstimateKind kind = EstimateKind::Exact;
  std::optional<Witness> witness;
  std::uint64_t evaluated = 0;
  std::string method;
};

struct ExactOptions {
  std::uint64_t cap = std::uint64_t{1} << 34;
  unsigned workers = 1;
  bool prune_symmetry = true;
};

struct SearchOptions {
  std::size_t restarts = 16;
  std::uint64_t seed = 1;
  std::size_t max_sweeps = 1000;
};

// sum_ij K(f_i, g_j) / (n * sum_ij a_ij K(f_i, g_j)); NaN for 0/0 and
// infinity for x/0.
double poincare_ratio(const StochasticMatrix& a, const KernelSpace& k, const std::vector<std::uint32_t>& f,
                      const std::vector<std::uint32_t>& g);

PoincareEstimate gamma_plus_exact(const StochasticMatrix& a, const KernelSpace& k, const ExactOptions& opt = {});
PoincareEstimate gamma_exact(const StochasticMatrix& a, const KernelSpace& k, const ExactOptions& opt = {});
PoincareEstimate gamma_plus_search(const StochasticMatrix& a, const KernelSpace& k, const SearchOptions& opt = {});
PoincareEstimate gamma_search(const StochasticMatrix& a, const KernelSpace& k, const SearchOptions& opt = {});

// Lower bound on gamma_plus(G, (log(1 + ||.||_inf))^p) from the Frechet
// embedding v -> (d_G(v,u))_u with f = g = that embedding.
PoincareEstimate frechet_lower_bound(const Multigraph& g, double p);
// The same bound for the Cesaro graph A_m(G), computed without building it.
PoincareEstimate frechet_lower_bound_cesaro(const Multigraph& g, std::size_t m, double p);

struct CoarseReport {
  double threshold_distance = 0;  // at least half of all ordered pairs are this far apart
  double c = 0;                   // threshold_distance / log n
  double log_n = 0;
  double gamma_plus = 0;
  double p = 2;
  double distortion_lower_bound = 1;
};

// Any map into a space with the given Poincare constant that expands no
// distance has distortion at least threshold / (2 gamma)^(1/p).
CoarseReport coarse_obstruction_report(const Multigraph& g, double gamma_plus, double p);

}  // namespace nlsg
