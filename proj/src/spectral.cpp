#include "nlsg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nlsg/errors.hpp"
#include "nlsg/random.hpp"

namespace nlsg {

namespace {

constexpr std::size_t kVectorLimit = 512;

// Householder reduction of V (row-major, overwritten) to tridiagonal form.
// On return d holds the diagonal and e the subdiagonal in e[1..n-1]. When
// accumulate is set V holds the orthogonal transformation.
void tred2(std::size_t n, std::vector<double>& V, std::vector<double>& d, std::vector<double>& e, bool accumulate) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return V[i * n + j]; };
  for (std::size_t j = 0; j < n; ++j) d[j] = at(n - 1, j);
  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
        at(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        at(j, i) = f;
        g = e[j] + at(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += at(k, j) * d[k];
          e[k] += at(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) at(k, j) -= (f * e[k] + g * d[k]);
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
      }
    }
    d[i] = h;
  }
  if (!accumulate) {
    for (std::size_t j = 0; j < n; ++j) d[j] = at(j, j);
    e[0] = 0.0;
    return;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    at(n - 1, i) = at(i, i);
    at(i, i) = 1.0;
    double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = at(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += at(k, i + 1) * at(k, j);
        for (std::size_t k = 0; k <= i; ++k) at(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) at(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = at(n - 1, j);
    at(n - 1, j) = 0.0;
  }
  at(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e); rotations are applied to V when
// vectors is set.
void tql2(std::size_t n, std::vector<double>& V, std::vector<double>& d, std::vector<double>& e, bool vectors) {
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) throw ConvergenceFailure("QL iteration did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              double& vk1 = V[k * n + ii + 1];
              double& vk = V[k * n + ii];
              h = vk1;
              vk1 = s * vk + c * h;
              vk = c * vk - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

SpectralReport finish_report(std::vector<double> values, bool complete, bool connected, bool bipartite,
                             std::size_t n, double residual, std::string method) {
  SpectralReport r;
  for (auto& v : values) v = std::clamp(v, -1.0, 1.0);
  std::sort(values.begin(), values.end(), std::greater<>());
  r.complete = complete;
  r.residual = residual;
  r.method = std::move(method);
  if (n == 1) {
    r.eigenvalues = {1.0};
    r.lambda2 = r.lambda_min = r.lambda = 0.0;
    r.gamma = r.gamma_plus = 1.0;
    return r;
  }
  if (!values.empty()) values[0] = 1.0;
  double l2 = values.size() > 1 ? values[1] : 0.0;
  double ln = values.back();
  if (!connected) {
    l2 = 1.0;
  } else if (l2 >= 1.0) {
    l2 = std::nextafter(1.0, 0.0);
  }
  if (bipartite) {
    ln = -1.0;
  } else if (connected && ln <= -1.0) {
    ln = std::nextafter(-1.0, 0.0);
  }
  if (values.size() > 1) {
    values[1] = l2;
    values.back() = ln;
    // The nudges above may break ties out of order.
    for (std::size_t i = 2; i < values.size(); ++i) values[i] = std::min(values[i], l2);
    for (std::size_t i = values.size() - 1; i-- > 1;) values[i] = std::max(values[i], ln);
  }
  r.eigenvalues = std::move(values);
  r.lambda2 = l2;
  r.lambda_min = ln;
  r.lambda = std::max(std::abs(l2), std::abs(ln));
  r.gamma = inverse_gap(l2);
  r.gamma_plus = inverse_gap(r.lambda);
  return r;
}

SpectralReport dense_report(const DenseMatrix& m, bool connected, bool bipartite) {
  std::size_t n = m.rows;
  if (n <= kVectorLimit) {
    EigenDecomposition eig = symmetric_eigen(m);
    double residual = 0.0;
    std::vector<double> av(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j) * eig.vectors(j, k);
        residual = std::max(residual, std::abs(s - eig.values[k] * eig.vectors(i, k)));
      }
    }
    if (residual > kResidualTolerance) throw ConvergenceFailure("eigenpair residual above tolerance");
    return finish_report(std::move(eig.values), true, connected, bipartite, n, residual, "dense-ql");
  }
  return finish_report(symmetric_eigenvalues(m), true, connected, bipartite, n, std::nan(""), "dense-ql");
}

}  // namespace

double inverse_gap(double x) { return x >= 1.0 ? kInfinity : 1.0 / (1.0 - x); }

EigenDecomposition symmetric_eigen(const DenseMatrix& a) {
  std::size_t n = a.rows;
  if (n == 0 || a.cols != n) throw IncompatibleSizes("eigen solver needs a square matrix");
  EigenDecomposition out;
  std::vector<double> V = a.data;
  std::vector<double> d(n), e(n);
  tred2(n, V, d, e, true);
  tql2(n, V, d, e, true);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = V[i * n + order[k]];
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& a) {
  std::size_t n = a.rows;
  if (n == 0 || a.cols != n) throw IncompatibleSizes("eigen solver needs a square matrix");
  std::vector<double> V = a.data;
  std::vector<double> d(n), e(n);
  tred2(n, V, d, e, false);
  tql2(n, V, d, e, false);
  std::sort(d.begin(), d.end());
  return d;
}

LanczosResult lanczos_extremes(std::size_t n, const std::function<void(const double*, double*)>& apply,
                               std::uint64_t seed, std::size_t max_steps) {
  LanczosResult out;
  if (n < 2) return out;
  std::size_t kmax = std::min(max_steps, n - 1);
  std::vector<std::vector<double>> q;
  std::vector<double> alpha, beta;
  Rng rng(seed);
  std::vector<double> v(n), w(n);
  auto project = [&](std::vector<double>& x) {
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    for (auto& xi : x) xi -= mean;
  };
  auto normalize = [&](std::vector<double>& x) {
    double s = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    for (auto& xi : x) xi /= s;
    return s;
  };
  for (auto& x : v) x = rng.normal();
  project(v);
  normalize(v);
  q.push_back(v);
  for (std::size_t k = 0; k < kmax; ++k) {
    apply(q[k].data(), w.data());
    double a = std::inner_product(w.begin(), w.end(), q[k].begin(), 0.0);
    alpha.push_back(a);
    // Full reorthogonalisation, twice, against the constant vector and the basis.
    for (int pass = 0; pass < 2; ++pass) {
      project(w);
      for (const auto& qi : q) {
        double c = std::inner_product(w.begin(), w.end(), qi.begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * qi[i];
      }
    }
    double b = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    bool last = (k + 1 == kmax) || b < 1e-13;
    if ((k + 1) % 10 == 0 || last) {
      std::size_t m = alpha.size();
      DenseMatrix t(m, m);
      for (std::size_t i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      EigenDecomposition eig = symmetric_eigen(t);
      double r_lo = std::abs(b * eig.vectors(m - 1, 0));
      double r_hi = std::abs(b * eig.vectors(m - 1, m - 1));
      out.lowest = eig.values.front();
      out.highest = eig.values.back();
      out.iterations = m;
      out.residual = std::max(r_lo, r_hi);
      if (out.residual < kResidualTolerance || last) break;
    }
    beta.push_back(b);
    for (auto& x : w) x /= b;
    q.push_back(w);
  }
  if (out.residual > kResidualTolerance) throw ConvergenceFailure("Lanczos did not reach the residual tolerance");
  return out;
}

SpectralReport spectrum(const StochasticMatrix& a) {
  std::size_t n = a.size();
  bool connected = support_connected(a);
  bool bipartite = connected && support_bipartite(a);
  if (n <= kDenseLimit) return dense_report(to_dense(a), connected, bipartite);
  DenseMatrix m = to_dense(a);
  LanczosResult lr = lanczos_extremes(n, [&](const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
      y[i] = s;
    }
  });
  return finish_report({1.0, lr.highest, lr.lowest}, false, connected, bipartite, n, lr.residual, "lanczos");
}

SpectralReport spectrum(const Multigraph& g, std::size_t dense_limit) {
  std::size_t n = g.vertices();
  std::size_t d = g.degree();
  bool connected = is_connected(g);
  bool bipartite = connected && is_bipartite(g);
  if (n <= dense_limit) {
    DenseMatrix m(n, n);
    double w = 1.0 / static_cast<double>(d);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t p = 0; p < d; ++p) m(v, g.neighbor(v, p)) += w;
    return dense_report(m, connected, bipartite);
  }
  double w = 1.0 / static_cast<double>(d);
  LanczosResult lr = lanczos_extremes(n, [&](const double* x, double* y) {
    for (std::size_t v = 0; v < n; ++v) {
      double s = 0.0;
      for (std::size_t p = 0; p < d; ++p) s += x[g.neighbor(v, p)];
      y[v] = s * w;
    }
  });
  return finish_report({1.0, lr.highest, lr.lowest}, false, connected, bipartite, n, lr.residual, "lanczos");
}

}  // namespace nlsg
