#pragma once

// Independent reference implementations. Nothing here calls into the engine
// code it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "nlsg/cotype.hpp"
#include "nlsg/hypercube.hpp"
#include "nlsg/multigraph.hpp"
#include "nlsg/poincare.hpp"

namespace oracle {

inline Eigen::MatrixXd dense(const nlsg::StochasticMatrix& a) {
  Eigen::Index n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a.value(i, j);
  return m;
}

// Adjacency counted straight from the rotation map.
inline Eigen::MatrixXd adjacency(const nlsg::Multigraph& g) {
  Eigen::Index n = static_cast<Eigen::Index>(g.vertices());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t v = 0; v < g.vertices(); ++v)
    for (std::size_t p = 0; p < g.degree(); ++p) m(v, g.neighbor(v, p)) += 1.0;
  return m;
}

// Descending.
inline std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

inline double lambda(const Eigen::MatrixXd& m) {
  auto v = eigenvalues(m);
  double l = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) l = std::max(l, std::abs(v[i]));
  return l;
}

inline double inv_gap(double x) {
  return x >= 1.0 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - x);
}

inline Eigen::MatrixXd cesaro(const Eigen::MatrixXd& a, std::size_t m) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  for (std::size_t s = 0; s < m; ++s) {
    sum += p;
    p = p * a;
  }
  return sum / static_cast<double>(m);
}

// Every pair of assignments, no symmetry pruning, no early exits.
struct Sup {
  double value = 1.0;
  bool any = false;
};

inline Sup naive_sup(const nlsg::StochasticMatrix& a, const nlsg::KernelSpace& k, bool same) {
  std::size_t n = a.size();
  std::size_t x = k.points;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= x;
  Sup s;
  std::vector<std::size_t> f(n), g(n);
  auto decode = [&](std::uint64_t idx, std::vector<std::size_t>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = idx % x;
      idx /= x;
    }
  };
  for (std::uint64_t fi = 0; fi < total; ++fi) {
    decode(fi, f);
    for (std::uint64_t gi = same ? fi : 0; gi < (same ? fi + 1 : total); ++gi) {
      decode(gi, g);
      double top = 0.0, bottom = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          top += k(f[i], g[j]);
          bottom += a.value(i, j) * k(f[i], g[j]);
        }
      if (top == 0.0 && bottom == 0.0) continue;
      double r = bottom == 0.0 ? std::numeric_limits<double>::infinity() : top / (static_cast<double>(n) * bottom);
      s.value = s.any ? std::max(s.value, r) : r;
      s.any = true;
    }
  }
  if (!s.any) s.value = 1.0;
  return s;
}

inline double gamma_plus(const nlsg::StochasticMatrix& a, const nlsg::KernelSpace& k) {
  return naive_sup(a, k, false).value;
}
inline double gamma(const nlsg::StochasticMatrix& a, const nlsg::KernelSpace& k) {
  return naive_sup(a, k, true).value;
}

inline std::vector<std::vector<double>> floyd_warshall(const nlsg::Multigraph& g) {
  std::size_t n = g.vertices();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (std::size_t p = 0; p < g.degree(); ++p) {
      std::size_t u = g.neighbor(v, p);
      if (u != v) d[v][u] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Minimum weight over all 2^k combinations of the generator rows.
inline int min_weight(const std::vector<std::uint64_t>& rows) {
  int best = std::numeric_limits<int>::max();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << rows.size()); ++mask) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (mask >> i & 1) w ^= rows[i];
    best = std::min(best, std::popcount(w));
  }
  return best;
}

// O(4^n) transform straight from the definition.
inline nlsg::CubeFunction wht(const nlsg::CubeFunction& f) {
  nlsg::CubeFunction out(f.n, f.k);
  double inv = 1.0 / static_cast<double>(f.size());
  for (std::uint64_t a = 0; a < f.size(); ++a)
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      double s = (std::popcount(a & x) & 1) ? -inv : inv;
      for (std::size_t c = 0; c < f.k; ++c) out.at(a)[c] += s * f.at(x)[c];
    }
  return out;
}

inline nlsg::CubeFunction heat(const nlsg::CubeFunction& f, double t) {
  nlsg::CubeFunction out(f.n, f.k);
  double tau = (1.0 - std::exp(-t)) / 2.0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    for (std::uint64_t y = 0; y < f.size(); ++y) {
      int w = std::popcount(x ^ y);
      double c = std::pow(tau, w) * std::pow(1.0 - tau, static_cast<int>(f.n) - w);
      for (std::size_t j = 0; j < f.k; ++j) out.at(x)[j] += c * f.at(y)[j];
    }
  return out;
}

// Closed-form martingale increments by simulating the chain: each walk draws
// Z_0 uniformly, then steps with probabilities a_ij.
struct ChainEstimate {
  std::vector<double> increments;
  double total = 0;
};

template <class Rng>
ChainEstimate simulate_chain(const Eigen::MatrixXd& a, std::size_t m, const nlsg::PointSet& x, std::size_t walks,
                             Rng& rng) {
  std::size_t n = x.n;
  std::vector<Eigen::MatrixXd> f(m + 1);
  Eigen::MatrixXd xm(n, x.k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < x.k; ++c) xm(i, c) = x.row(i)[c];
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  std::vector<Eigen::MatrixXd> pw(m + 1);
  for (std::size_t r = 0; r <= m; ++r) {
    pw[r] = p * xm;
    p = p * a;
  }
  for (std::size_t t = 0; t <= m; ++t) f[t] = pw[m - t];
  ChainEstimate est;
  est.increments.assign(m, 0.0);
  for (std::size_t w = 0; w < walks; ++w) {
    std::size_t z0 = rng.below(n);
    std::size_t z = z0;
    for (std::size_t t = 1; t <= m; ++t) {
      double u = rng.uniform();
      std::size_t next = n - 1;
      for (std::size_t j = 0; j < n; ++j) {
        u -= a(z, j);
        if (u < 0) {
          next = j;
          break;
        }
      }
      est.increments[t - 1] += (f[t].row(next) - f[t - 1].row(z)).squaredNorm();
      z = next;
    }
    est.total += (f[m].row(z) - f[0].row(z0)).squaredNorm();
  }
  for (auto& v : est.increments) v /= static_cast<double>(walks);
  est.total /= static_cast<double>(walks);
  return est;
}

}  // namespace oracle
