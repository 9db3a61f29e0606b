#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nlsg/codes.hpp"
#include "nlsg/hypercube.hpp"
#include "nlsg/multigraph.hpp"
#include "nlsg/poincare.hpp"
#include "nlsg/spectral.hpp"

namespace nlsg {

struct HeatWeights {
  double tau = 0;
  std::vector<double> by_weight;  // tau^j (1 - tau)^(n - j), j = 0..n
};

HeatWeights heat_weights(std::size_t n, double t);

// Cayley multigraph on F_2^n keeping the generators of weight <= 4 tau n
// with multiplicity round(w(z) / quantum), quantum being the smallest kept
// weight.
struct Truncation {
  std::size_t n = 0;
  double t = 0;
  double tau = 0;
  double cutoff = 0;  // 4 tau n
  std::size_t max_weight = 0;
  double quantum = 0;
  std::vector<std::uint64_t> multiplicity;  // by weight class 0..max_weight
  std::uint64_t degree = 0;
  double degree_bound = 0;  // tau^(-4 tau n) (1 - tau)^(-(1 - 4 tau) n)
  double feasibility_lhs = 0;  // 18 tau^2 n
  double feasibility_rhs = 0;  // 2 p log n + log 4
  bool feasible = false;
  std::vector<std::string> warnings;
  Multigraph graph;
};

Truncation truncate(std::size_t n, double t, double p = 2.0);

struct NoiseSandwich {
  double heat_form = 0;  // 2^-n sum_{x,y} (T_t)_{xy} ||f(x) - g(y)||^p
  double edge_form = 0;  // average of ||f(x) - g(y)||^p over directed ports
  double ratio = 0;      // heat_form / edge_form
};

NoiseSandwich noise_sandwich(const Truncation& tr, const CubeFunction& f, const CubeFunction& g, double p);

// Quotient of a Cayley multigraph on F_2^n by the subgroup c_perp; the
// multiplicities are divided by |c_perp| so the degree is unchanged.
Multigraph quotient(const Multigraph& g, const BinaryCode& c_perp);

struct NormBound {
  double p = 2;
  double norm = 0;  // lambda(A) for p = 2, an ascent lower estimate otherwise
  bool certified = false;
  double gamma_plus_bound = 0;  // 8^p (1 - norm)^(-p)
};

NormBound norm_bound(const StochasticMatrix& a, double p, std::uint64_t seed = 1);

struct BaseGraphReport {
  std::size_t n = 0;
  double t = 0;
  std::uint64_t seed = 0;
  GoodCode code;
  BinaryCode dual_code;
  Truncation truncation;
  Multigraph base;
  SpectralReport spectral;
  NormBound norm;
  bool degree_preserved = false;
  double fourier_tail = 0;  // largest |f_hat(A)| / ||f||_2 with 0 < |A| < distance, f coset-constant
  std::vector<double> sandwich_ratios;
  double sandwich_min = 0;
  double sandwich_max = 0;
  std::vector<std::pair<std::string, PoincareEstimate>> search_bounds;
  double seconds = 0;
};

BaseGraphReport build_base(std::size_t n, double t, std::uint64_t seed, std::size_t sandwich_pairs = 100);

// Random test pair for the sandwich; the family cycles through independent,
// smooth, correlated and coset-constant shapes.
std::pair<CubeFunction, CubeFunction> random_cube_pair(std::size_t n, std::size_t family, Rng& rng,
                                                       const BinaryCode* c_perp = nullptr);

}  // namespace nlsg
