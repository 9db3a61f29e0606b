#include "nlsg/cotype.hpp"

#include <algorithm>
#include <cmath>

#include "nlsg/errors.hpp"
#include "nlsg/graph_ops.hpp"
#include "nlsg/spectral.hpp"

namespace nlsg {

namespace {

struct Csr {
  std::size_t n = 0;
  std::vector<std::size_t> start;
  std::vector<std::uint32_t> col;
  std::vector<double> val;
};

Csr csr(const StochasticMatrix& a) {
  Csr c;
  c.n = a.size();
  c.start.push_back(0);
  for (std::size_t i = 0; i < c.n; ++i) {
    for (std::size_t j = 0; j < c.n; ++j)
      if (a.numerator(i, j) != 0) {
        c.col.push_back(static_cast<std::uint32_t>(j));
        c.val.push_back(a.value(i, j));
      }
    c.start.push_back(c.col.size());
  }
  return c;
}

// (A z)_i = z_i + sum_j a_ij (z_j - z_i); constants are fixed exactly.
PointSet apply(const Csr& a, const PointSet& z) {
  PointSet out = z;
  for (std::size_t i = 0; i < a.n; ++i) {
    double* o = out.row(i);
    const double* zi = z.row(i);
    for (std::size_t e = a.start[i]; e < a.start[i + 1]; ++e) {
      std::size_t j = a.col[e];
      if (j == i) continue;
      const double* zj = z.row(j);
      for (std::size_t c = 0; c < z.k; ++c) o[c] += a.val[e] * (zj[c] - zi[c]);
    }
  }
  return out;
}

std::vector<double> apply_left(const Csr& a, const std::vector<double>& pi) {
  std::vector<double> out(a.n, 0.0);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t e = a.start[i]; e < a.start[i + 1]; ++e) out[a.col[e]] += pi[i] * a.val[e];
  return out;
}

double dist2(const double* a, const double* b, std::size_t k) {
  double s = 0.0;
  for (std::size_t c = 0; c < k; ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
  return s;
}

// sum_ij a_ij ||z_i - z_j||^2 over the sparse support.
double dirichlet(const Csr& a, const PointSet& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t e = a.start[i]; e < a.start[i + 1]; ++e) s += a.val[e] * dist2(z.row(i), z.row(a.col[e]), z.k);
  return s;
}

void check_points(const StochasticMatrix& a, const PointSet& x) {
  if (x.n != a.size()) throw IncompatibleSizes("point count differs from matrix size");
  if (x.k == 0) throw IncompatibleSizes("points need at least one coordinate");
}

bool at_most(double lhs, double rhs) { return lhs <= rhs || lhs <= rhs * (1.0 + 1e-9); }

}  // namespace

PointSet cesaro_points(const StochasticMatrix& a, std::size_t m, const PointSet& x) {
  check_points(a, x);
  if (m == 0) throw UsageError("cesaro needs m >= 1");
  Csr c = csr(a);
  PointSet sum = x;
  PointSet z = x;
  for (std::size_t s = 1; s < m; ++s) {
    z = apply(c, z);
    for (std::size_t i = 0; i < sum.x.size(); ++i) sum.x[i] += z.x[i];
  }
  for (auto& v : sum.x) v /= static_cast<double>(m);
  return sum;
}

CotypeReport cotype_check(const StochasticMatrix& a, std::size_t m, const PointSet& x) {
  check_points(a, x);
  if (m == 0) throw UsageError("cesaro needs m >= 1");
  Csr c = csr(a);
  CotypeReport r;
  r.m = m;
  // Accumulate x - y = (1/m) sum_s (x - A^s x) and the base right-hand side
  // sum_ij (A^s)_ij ||x_i - x_j||^2 = 2 sum_i <x_i, x_i - (A^s x)_i>.
  PointSet z = x;
  PointSet diff(x.n, x.k);
  double rhs = 0.0;
  for (std::size_t s = 1; s < m; ++s) {
    z = apply(c, z);
    double term = 0.0;
    for (std::size_t i = 0; i < x.x.size(); ++i) {
      double d = x.x[i] - z.x[i];
      diff.x[i] += d;
      term += x.x[i] * d;
    }
    rhs += 2.0 * term;
  }
  double md = static_cast<double>(m);
  for (auto& v : diff.x) v /= md;
  r.rhs_base = std::max(0.0, rhs / md);
  {
    PointSet am = apply(c, z);
    double term = 0.0;
    for (std::size_t i = 0; i < x.x.size(); ++i) term += x.x[i] * (x.x[i] - am.x[i]);
    r.power_form = std::max(0.0, 2.0 * term);
  }
  PointSet y = x;
  for (std::size_t i = 0; i < y.x.size(); ++i) y.x[i] -= diff.x[i];
  for (double v : diff.x) r.displacement += v * v;
  r.smoothness = md * dirichlet(c, y);
  r.lhs = r.displacement + r.smoothness;
  r.binding = r.displacement >= r.smoothness ? "displacement" : "smoothness";
  // Below this the right-hand side is rounding noise: x is constant on every
  // component of A_m up to the last few bits.
  std::vector<double> mean(x.k, 0.0);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t c = 0; c < x.k; ++c) mean[c] += x.row(i)[c] / static_cast<double>(x.n);
  double spread = 0.0;
  for (std::size_t i = 0; i < x.n; ++i) spread += dist2(x.row(i), mean.data(), x.k);
  double noise = kDegenerateRelative * spread;
  if (r.rhs_base <= noise) {
    r.degenerate = true;
    r.minimal_c2 = r.lhs <= noise ? 0.0 : kInfinity;
    r.power_ratio = r.power_form <= noise ? 0.0 : kInfinity;
  } else {
    r.minimal_c2 = r.lhs / r.rhs_base;
    r.power_ratio = r.power_form / r.rhs_base;
  }
  // rhs_base comes from inner products of x, so its rounding error scales
  // with sum ||x_i||^2 rather than with the spread.
  double mass = 0.0;
  for (double v : x.x) mass += v * v;
  r.displacement_holds = r.displacement <= r.rhs_base * (1.0 + 1e-12) + 1e-12 * mass;
  return r;
}

MartingaleReport martingale_chain(const StochasticMatrix& a, std::size_t m, const PointSet& x,
                                  std::optional<std::size_t> start) {
  check_points(a, x);
  if (m == 0) throw UsageError("martingale chain needs m >= 1");
  std::size_t n = x.n;
  if (start && *start >= n) throw UsageError("start vertex out of range");
  Csr c = csr(a);
  // powers[r] = A^r x, so f_t = powers[m - t].
  std::vector<PointSet> powers{x};
  for (std::size_t r = 1; r <= m; ++r) powers.push_back(apply(c, powers.back()));
  auto f = [&](std::size_t t) -> const PointSet& { return powers[m - t]; };

  std::vector<std::size_t> starts;
  if (start) {
    starts.push_back(*start);
  } else {
    for (std::size_t v = 0; v < n; ++v) starts.push_back(v);
  }
  MartingaleReport rep;
  rep.increments.assign(m, 0.0);
  double weight = 1.0 / static_cast<double>(starts.size());
  for (std::size_t l : starts) {
    std::vector<double> pi(n, 0.0);
    pi[l] = 1.0;
    for (std::size_t t = 1; t <= m; ++t) {
      double inc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (pi[i] == 0.0) continue;
        double local = 0.0;
        for (std::size_t e = c.start[i]; e < c.start[i + 1]; ++e)
          local += c.val[e] * dist2(f(t).row(c.col[e]), f(t - 1).row(i), x.k);
        inc += pi[i] * local;
      }
      rep.increments[t - 1] += weight * inc;
      pi = apply_left(c, pi);
    }
    // pi is now the law of Z_m given Z_0 = l.
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (pi[j] != 0.0) total += pi[j] * dist2(f(m).row(j), f(0).row(l), x.k);
    rep.total += weight * total;
  }
  for (double v : rep.increments) rep.increment_sum += v;
  return rep;
}

DecayReport decay_check(const StochasticMatrix& a, std::size_t m, double c2) {
  if (m == 0) throw UsageError("cesaro needs m >= 1");
  SpectralReport sr = spectrum(a);
  DecayReport r;
  r.gamma_a = sr.gamma;
  double top = 0.0;
  bool any = false;
  for (std::size_t i = 1; i < sr.eigenvalues.size(); ++i) {
    double lam = sr.eigenvalues[i];
    double p = 0.0;
    double pw = 1.0;
    for (std::size_t s = 0; s < m; ++s) {
      p += pw;
      pw *= lam;
    }
    p /= static_cast<double>(m);
    top = any ? std::max(top, p) : p;
    any = true;
  }
  r.gamma_cesaro = any ? inverse_gap(top) : 1.0;
  r.bound = 12.0 * c2 * std::max(1.0, r.gamma_a / static_cast<double>(m));
  r.holds = at_most(r.gamma_cesaro, r.bound);
  return r;
}

BallReport ball_inequality_check(const std::vector<Atom>& atoms) {
  if (atoms.empty()) throw UsageError("distribution has no atoms");
  std::size_t k = atoms[0].point.size();
  double total = 0.0;
  std::vector<double> mean(k, 0.0);
  for (const auto& at : atoms) {
    if (at.point.size() != k) throw IncompatibleSizes("atoms have different dimensions");
    if (at.probability < 0.0) throw UsageError("negative probability");
    total += at.probability;
    for (std::size_t c = 0; c < k; ++c) mean[c] += at.probability * at.point[c];
  }
  if (std::abs(total - 1.0) > 1e-12) throw UsageError("probabilities do not sum to one");
  BallReport r;
  for (double v : mean) r.mean_sq += v * v;
  for (const auto& at : atoms) {
    r.variance += at.probability * dist2(at.point.data(), mean.data(), k);
    double sq = 0.0;
    for (double v : at.point) sq += v * v;
    r.second += at.probability * sq;
  }
  r.residual = std::abs(r.mean_sq + r.variance - r.second) / std::max(r.second, 1.0);
  return r;
}

SandwichReport doubling_check(const StochasticMatrix& a, const KernelSpace& k, const ExactOptions& opt) {
  double gd = gamma_exact(double_cover(a), k, opt).value;
  SandwichReport r;
  r.middle = gamma_plus_exact(a, k, opt).value;
  r.lower = 0.4 * gd;
  r.upper = 2.0 * gd;
  r.holds = at_most(r.lower, r.middle) && at_most(r.middle, r.upper);
  return r;
}

SandwichReport commute_check(const StochasticMatrix& a, std::size_t m, const KernelSpace& k,
                             const ExactOptions& opt) {
  SandwichReport r;
  r.middle = gamma_exact(double_cover(cesaro_matrix(a, m)), k, opt).value;
  r.upper = 9.0 * gamma_exact(cesaro_matrix(double_cover(a), m), k, opt).value;
  r.holds = at_most(r.middle, r.upper);
  return r;
}

EuclideanDecay euclidean_decay(const StochasticMatrix& a, std::size_t t) {
  if (t == 0) throw UsageError("power needs t >= 1");
  SpectralReport sr = spectrum(a);
  EuclideanDecay r;
  r.gamma_plus = sr.gamma_plus;
  r.gamma_plus_power = inverse_gap(std::pow(sr.lambda, static_cast<double>(t)));
  r.ratio = r.gamma_plus_power / std::max(1.0, r.gamma_plus / static_cast<double>(t));
  r.in_band = !std::isfinite(r.gamma_plus) || (r.ratio >= kDecayBandLow && r.ratio <= kDecayBandHigh);
  return r;
}

std::vector<EuclideanDecay> euclidean_decay_sweep(std::size_t count, std::uint64_t seed) {
  std::vector<EuclideanDecay> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    std::size_t n = 2 + rng.below(127);
    std::size_t d = 1 + rng.below(8);
    std::size_t t = 1 + rng.below(64);
    EuclideanDecay e = euclidean_decay(normalized_adjacency(random_regular(n, d, rng)), t);
    if (std::isfinite(e.gamma_plus)) out.push_back(e);
  }
  return out;
}

CotypeSample random_cotype_sample(Rng& rng, const SweepLimits& lim) {
  CotypeSample s;
  s.n = 2 + rng.below(lim.max_n - 1);
  s.degree = 1 + rng.below(lim.max_degree);
  std::size_t m = lim.min_m + rng.below(lim.max_m - lim.min_m + 1);
  s.dim = 1 + rng.below(lim.max_k);
  s.family = static_cast<int>(rng.below(3));
  s.graph = random_regular(s.n, s.degree, rng);
  StochasticMatrix a = normalized_adjacency(s.graph);
  PointSet x(s.n, s.dim);
  for (auto& v : x.x) v = rng.normal();
  if (s.family == 1) {
    // A few clusters, so most of the mass sits on low frequencies.
    std::size_t clusters = 2 + rng.below(3);
    std::vector<double> centres(clusters * s.dim);
    for (auto& v : centres) v = rng.normal();
    for (std::size_t i = 0; i < s.n; ++i) {
      std::size_t cl = rng.below(clusters);
      for (std::size_t c = 0; c < s.dim; ++c) x.row(i)[c] = centres[cl * s.dim + c];
    }
  } else if (s.family == 2) {
    std::size_t r = 1 + rng.below(20);
    for (std::size_t step = 0; step < r; ++step) x = cesaro_points(a, 2, x);
  }
  s.report = cotype_check(a, m, x);
  return s;
}

std::vector<CotypeSample> cotype_sweep(std::size_t count, std::uint64_t seed, const SweepLimits& limits) {
  std::vector<CotypeSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    out.push_back(random_cotype_sample(rng, limits));
  }
  return out;
}

}  // namespace nlsg
