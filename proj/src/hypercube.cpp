#include "nlsg/hypercube.hpp"

#include <cmath>

#include "nlsg/errors.hpp"

namespace nlsg {

namespace {

void butterfly(CubeFunction& f) {
  std::size_t size = f.size();
  std::size_t k = f.k;
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        double* a = f.at(j);
        double* b = f.at(j + h);
        for (std::size_t c = 0; c < k; ++c) {
          double x = a[c];
          double y = b[c];
          a[c] = x + y;
          b[c] = x - y;
        }
      }
}

CubeFunction multiply_spectrum(const CubeFunction& f, double (*mult)(std::size_t, double), double arg) {
  CubeFunction g = wht(f);
  for (std::uint64_t a = 0; a < g.size(); ++a) {
    double w = mult(static_cast<std::size_t>(__builtin_popcountll(a)), arg);
    double* v = g.at(a);
    for (std::size_t c = 0; c < g.k; ++c) v[c] *= w;
  }
  return inverse_wht(g);
}

}  // namespace

CubeFunction::CubeFunction(std::size_t n_, std::size_t k_) : n(n_), k(k_) {
  if (n > kMaxCubeDimension) throw TooLarge("cube dimension above " + std::to_string(kMaxCubeDimension));
  if (k == 0) throw UsageError("cube function needs at least one coordinate");
  values.assign((std::size_t{1} << n) * k, 0.0);
}

CubeFunction wht(const CubeFunction& f) {
  CubeFunction g = f;
  butterfly(g);
  double scale = 1.0 / static_cast<double>(g.size());
  for (auto& v : g.values) v *= scale;
  return g;
}

CubeFunction inverse_wht(const CubeFunction& f_hat) {
  CubeFunction g = f_hat;
  butterfly(g);
  return g;
}

CubeFunction laplacian(const CubeFunction& f) {
  CubeFunction out(f.n, f.k);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    double* o = out.at(x);
    const double* fx = f.at(x);
    for (std::size_t i = 0; i < f.n; ++i) {
      const double* fy = f.at(x ^ (std::uint64_t{1} << i));
      for (std::size_t c = 0; c < f.k; ++c) o[c] += 0.5 * (fx[c] - fy[c]);
    }
  }
  return out;
}

CubeFunction heat(const CubeFunction& f, double t) {
  if (t < 0) throw UsageError("heat time must be non-negative");
  return multiply_spectrum(f, [](std::size_t w, double s) { return std::exp(-s * static_cast<double>(w)); }, t);
}

CubeFunction heat_spatial(const CubeFunction& f, double t) {
  if (t < 0) throw UsageError("heat time must be non-negative");
  double tau = (1.0 - std::exp(-t)) / 2.0;
  std::vector<double> w(f.n + 1);
  for (std::size_t j = 0; j <= f.n; ++j)
    w[j] = std::pow(tau, static_cast<double>(j)) * std::pow(1.0 - tau, static_cast<double>(f.n - j));
  CubeFunction out(f.n, f.k);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    double* o = out.at(x);
    for (std::uint64_t y = 0; y < f.size(); ++y) {
      double weight = w[__builtin_popcountll(x ^ y)];
      const double* fy = f.at(y);
      for (std::size_t c = 0; c < f.k; ++c) o[c] += weight * fy[c];
    }
  }
  return out;
}

CubeFunction tail_project(const CubeFunction& f, std::size_t m) {
  CubeFunction g = wht(f);
  for (std::uint64_t a = 0; a < g.size(); ++a)
    if (static_cast<std::size_t>(__builtin_popcountll(a)) < m)
      for (std::size_t c = 0; c < g.k; ++c) g.at(a)[c] = 0.0;
  return inverse_wht(g);
}

double l2_norm(const CubeFunction& f) { return lp_norm(f, 2.0); }

double lp_norm(const CubeFunction& f, double p) {
  double s = 0.0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    double sq = 0.0;
    for (std::size_t c = 0; c < f.k; ++c) sq += f.at(x)[c] * f.at(x)[c];
    s += std::pow(std::sqrt(sq), p);
  }
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

double low_weight_mass(const CubeFunction& f_hat, std::size_t m) {
  double s = 0.0;
  for (std::uint64_t a = 1; a < f_hat.size(); ++a) {
    if (static_cast<std::size_t>(__builtin_popcountll(a)) >= m) continue;
    for (std::size_t c = 0; c < f_hat.k; ++c) s += f_hat.at(a)[c] * f_hat.at(a)[c];
  }
  return s;
}

std::vector<double> lp_decay_curve(const CubeFunction& f, std::size_t m, double p, const std::vector<double>& times) {
  CubeFunction tail = tail_project(f, m);
  double base = lp_norm(tail, p);
  std::vector<double> out;
  for (double t : times) out.push_back(base == 0.0 ? 0.0 : lp_norm(heat(tail, t), p) / base);
  return out;
}

}  // namespace nlsg
