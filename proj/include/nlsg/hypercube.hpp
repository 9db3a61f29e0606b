#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nlsg {

inline constexpr std::size_t kMaxCubeDimension = 20;

// f: {0,1}^n -> R^k. Point x is the bit mask x; values are row-major by x.
struct CubeFunction {
  std::size_t n = 0;
  std::size_t k = 1;
  std::vector<double> values;

  CubeFunction() = default;
  CubeFunction(std::size_t n_, std::size_t k_);
  std::size_t size() const { return std::size_t{1} << n; }
  double* at(std::uint64_t x) { return values.data() + x * k; }
  const double* at(std::uint64_t x) const { return values.data() + x * k; }
};

// W_A(x) = (-1)^{|A & x|}.
inline double walsh(std::uint64_t a, std::uint64_t x) { return (__builtin_popcountll(a & x) & 1) ? -1.0 : 1.0; }

// f_hat(A) = E_x f(x) W_A(x).
CubeFunction wht(const CubeFunction& f);
// f(x) = sum_A f_hat(A) W_A(x).
CubeFunction inverse_wht(const CubeFunction& f_hat);

// Delta f = sum_i (f(x) - f(x + e_i)) / 2, so Delta W_A = |A| W_A.
CubeFunction laplacian(const CubeFunction& f);
// T_t multiplies f_hat(A) by exp(-t |A|).
CubeFunction heat(const CubeFunction& f, double t);
// Direct convolution with tau^{|z|} (1 - tau)^{n - |z|}, tau = (1 - e^{-t}) / 2.
CubeFunction heat_spatial(const CubeFunction& f, double t);
// Keeps the Walsh coefficients with |A| >= m.
CubeFunction tail_project(const CubeFunction& f, std::size_t m);

// (E_x ||f(x)||_2^2)^{1/2}.
double l2_norm(const CubeFunction& f);
// (E_x ||f(x)||_2^p)^{1/p}.
double lp_norm(const CubeFunction& f, double p);
// sum over A with 0 < |A| < m of ||f_hat(A)||^2.
double low_weight_mass(const CubeFunction& f_hat, std::size_t m);

// ||T_t f||_p / ||f||_p at each time, for the tail part of f.
std::vector<double> lp_decay_curve(const CubeFunction& f, std::size_t m, double p, const std::vector<double>& times);

}  // namespace nlsg
