#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nlsg/graph_ops.hpp"
#include "nlsg/multigraph.hpp"
#include "nlsg/poincare.hpp"
#include "nlsg/spectral.hpp"

namespace nlsg {

// 1 - (1 - l1)(1 - l2)^2, the zig-zag eigenvalue bound.
double rvw_bound(double lambda1, double lambda2);
// Largest lambda(H) for which the classical iteration keeps lambda <= 1/2.
double rvw_threshold(std::size_t t0);

struct LevelReport {
  std::size_t level = 0;
  std::size_t vertices = 0;
  std::size_t degree = 0;
  double lambda = 0;
  double gamma_plus = 0;
  double predicted = 0;  // recurrence bound for this level, or NaN
  bool within_bound = true;
  std::string method;
};

struct RvwReport {
  std::size_t t0 = 2;
  double threshold = 0;
  double base_lambda = 0;
  bool base_meets_threshold = false;
  std::vector<LevelReport> levels;
};

// G_1 = H^2, G_{i+1} = G_i^t0 (z) H; needs |V(H)| = deg(H)^(2 t0).
RvwReport rvw_iterate(const Multigraph& h, std::size_t t0, std::size_t depth, std::size_t cap = 1u << 26);

struct RvwBaseSearch {
  bool found = false;
  Multigraph graph;  // the best candidate, found or not
  double best_lambda = 1;
  std::size_t best_degree = 0;
  double threshold = 0;
  std::size_t tried = 0;
};

// Random d0-regular graphs on d0^(2 t0) vertices for d0 = 2..max_degree,
// stopping at the first that meets rvw_threshold(t0).
RvwBaseSearch find_rvw_base(std::size_t t0, std::size_t max_degree, std::size_t attempts, std::uint64_t seed);

// Smallest base size e^((4 t0)^k) demanded by the asymptotic level rule;
// infinity once it leaves double range.
double preset_base_size(std::size_t t0, std::size_t k);

struct SuperLevel {
  std::size_t level = 0;
  std::size_t vertices = 0;
  std::size_t degree = 0;
  double gamma_plus = 0;
  double gamma_plus_completed = 0;  // of C(A_t0(F_{j-1})) feeding this level
  double gamma_plus_cesaro = 0;     // of A_t0(F_{j-1})
  double recursive_bound = 0;       // 2 gamma_plus(A_t0(F_{j-1})) gamma_plus(F_0)^2
  bool within_bound = true;
  std::vector<std::pair<std::string, PoincareEstimate>> search;
};

struct SuperOptions {
  std::size_t t0 = 2;
  std::size_t depth = 3;
  std::size_t search_max_vertices = 1024;
  std::size_t restarts = 4;
  std::uint64_t seed = 1;
  std::size_t cap = 1u << 24;
};

// F_1 = C_{d0^2}(F_0), F_{j+1} = C_{n0}(A_t0(F_j)) (z) F_0.
std::vector<SuperLevel> super_iterate(const Multigraph& base, const SuperOptions& opt = {});
// The graphs F_0 .. F_depth themselves.
std::vector<Multigraph> super_family(const Multigraph& base, std::size_t t0, std::size_t depth,
                                     std::size_t cap = 1u << 24);

struct FamilyTable {
  std::vector<std::vector<std::size_t>> sizes;  // sizes[k-1][j] = n_j(k)
  std::vector<std::size_t> degrees;             // d_k
};

struct DiagonalStep {
  std::size_t i = 0;
  std::size_t h = 0;
  std::size_t completion_degree = 0;  // n_{j(h)}(h)
  std::size_t vertices = 0;
  std::size_t degree = 0;
};

struct DiagonalEntry {
  std::size_t k = 0;
  std::size_t base_vertices = 0;
  std::vector<DiagonalStep> steps;  // the last step always uses h = 1
  std::size_t final_vertices = 0;
  std::size_t final_degree = 0;
};

struct DiagonalPlan {
  std::vector<std::size_t> m;  // m_k
  std::vector<std::size_t> j;  // j(k)
  std::vector<DiagonalEntry> entries;
};

// m_k = ceil((2 C_k^3)^(1/eps_k)); j(k) is the first level with more than
// max{k, m_{k+1} d_{k+1}^(2 m_{k+1})} vertices.
DiagonalPlan plan_diagonalization(const FamilyTable& table, const std::vector<double>& c,
                                  const std::vector<double>& eps);
std::vector<Multigraph> diagonalize(const std::vector<std::vector<Multigraph>>& families, const std::vector<double>& c,
                                    const std::vector<double>& eps, std::size_t cap = 1u << 24);

struct FinishReport {
  Multigraph graph;
  std::size_t cycle_length = 0;
  double gamma_plus_h = 0;
  double gamma_plus_cycle = 0;
  double cycle_bound = 0;  // 4 d^2
  double gamma_plus_out = 0;
  double bound = 0;  // 16 d^4 gamma_plus(H)
  bool holds = true;
};

// H (z) C_d with loops: degree 9 on |V(H)| d vertices.
FinishReport finish_degree9(const Multigraph& h);
// The degree-9 graph replaced by 9-cycles: degree 3.
Multigraph finish_degree3(const Multigraph& h);

struct CounterexampleRow {
  std::size_t n = 0;
  std::size_t t = 0;  // longest walk averaged, i.e. Cesaro parameter t + 1
  double frechet_bound = 0;        // for A_{t+1}(G)
  double graph_frechet_bound = 0;  // for G itself
  double log_n = 0;
  double spectral_gamma_plus = 0;
};

struct CounterexampleFit {
  std::size_t t = 0;
  double slope = 0;  // bound ~ slope log(1 + log n / t)^p + intercept
  double intercept = 0;
  double r2 = 0;
  bool monotone = true;
};

struct CounterexampleReport {
  std::vector<CounterexampleRow> rows;
  std::vector<CounterexampleFit> fits;
};

CounterexampleReport counterexample_experiment(const std::vector<std::size_t>& sizes,
                                               const std::vector<std::size_t>& walk_lengths, std::size_t degree,
                                               std::size_t samples, std::uint64_t seed, double p = 2.0);

}  // namespace nlsg
