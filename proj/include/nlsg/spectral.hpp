#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nlsg/multigraph.hpp"

namespace nlsg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kResidualTolerance = 1e-10;
inline constexpr std::size_t kDenseLimit = 4096;

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k belongs to values[k]
};

// Householder tridiagonalisation followed by implicit QL.
EigenDecomposition symmetric_eigen(const DenseMatrix& a);
std::vector<double> symmetric_eigenvalues(const DenseMatrix& a);

struct LanczosResult {
  double lowest = 0;
  double highest = 0;
  std::size_t iterations = 0;
  double residual = 0;
};

// Extreme eigenvalues of a symmetric operator restricted to the orthogonal
// complement of the constant vector.
LanczosResult lanczos_extremes(std::size_t n, const std::function<void(const double*, double*)>& apply,
                               std::uint64_t seed = 1, std::size_t max_steps = 1000);

struct SpectralReport {
  std::vector<double> eigenvalues;  // descending; only 1, lambda2, lambda_n when !complete
  bool complete = true;
  double lambda2 = 0;
  double lambda_min = 0;
  double lambda = 0;  // max over i >= 2 of |lambda_i|
  double gamma = 1;
  double gamma_plus = 1;
  double residual = 0;  // NaN when eigenvectors were not formed
  std::string method;
};

SpectralReport spectrum(const StochasticMatrix& a);
// Dense up to dense_limit vertices, Lanczos on the rotation map above it.
SpectralReport spectrum(const Multigraph& g, std::size_t dense_limit = kDenseLimit);

// 1/(1-x) with 1/(1-1) = infinity.
double inverse_gap(double x);

}  // namespace nlsg
