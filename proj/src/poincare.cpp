#include "nlsg/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "nlsg/errors.hpp"
#include "nlsg/random.hpp"
#include "nlsg/spectral.hpp"

namespace nlsg {

namespace {

constexpr double kNegInf = -kInfinity;

struct SparseRows {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
};

SparseRows sparse_rows(const StochasticMatrix& a) {
  SparseRows s;
  std::size_t n = a.size();
  s.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.numerator(i, j) != 0) s.rows[i].emplace_back(static_cast<std::uint32_t>(j), a.value(i, j));
  return s;
}

std::uint64_t count_assignments(std::size_t base, std::size_t digits, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < digits; ++i) {
    if (r > cap / base) {
      throw EnumerationTooLarge("exhaustive search space exceeds the cap of " + std::to_string(cap) +
                                " assignments; use the search mode instead");
    }
    r *= base;
  }
  if (r > cap) throw EnumerationTooLarge("exhaustive search space exceeds the cap; use the search mode instead");
  return r;
}

void decode(std::uint64_t index, std::size_t base, std::vector<std::uint32_t>& digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<std::uint32_t>(index % base);
    index /= base;
  }
}

// Advances the odometer (last digit fastest); returns the most significant
// changed position, or digits.size() on wrap-around.
std::size_t advance(std::vector<std::uint32_t>& digits, std::size_t base, std::size_t first_free) {
  for (std::size_t i = digits.size(); i-- > first_free;) {
    if (++digits[i] < base) return i;
    digits[i] = 0;
  }
  return digits.size();
}

struct Outcome {
  double value = kNegInf;
  bool infinite = false;
  std::vector<std::uint32_t> f;
  std::vector<std::uint32_t> g;
  std::uint64_t evaluated = 0;
};

// Folds per-worker results; workers cover consecutive index ranges, so the
// first maximum in worker order is the first in enumeration order.
Outcome combine(std::vector<Outcome>& parts) {
  Outcome best;
  std::uint64_t evaluated = 0;
  for (auto& p : parts) {
    evaluated += p.evaluated;
    if (best.infinite) continue;
    if (p.infinite || p.value > best.value) best = std::move(p);
  }
  best.evaluated = evaluated;
  return best;
}

template <class Work>
std::vector<Outcome> run_workers(std::uint64_t total, unsigned workers, Work&& work) {
  workers = std::max(1u, workers);
  if (total < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, total));
  std::vector<Outcome> parts(workers);
  std::uint64_t chunk = total / workers;
  std::uint64_t extra = total % workers;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  std::uint64_t lo = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t len = chunk + (w < extra ? 1 : 0);
    ranges.emplace_back(lo, lo + len);
    lo += len;
  }
  if (workers == 1) {
    parts[0] = work(ranges[0].first, ranges[0].second);
    return parts;
  }
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&, w] { parts[w] = work(ranges[w].first, ranges[w].second); });
  for (auto& t : threads) t.join();
  return parts;
}

PoincareEstimate to_estimate(Outcome&& o, EstimateKind kind, std::string method) {
  PoincareEstimate e;
  e.kind = kind;
  e.method = std::move(method);
  e.evaluated = o.evaluated;
  if (o.infinite) {
    e.value = kInfinity;
    e.witness = Witness{std::move(o.f), std::move(o.g)};
  } else if (o.value == kNegInf) {
    e.value = 1.0;  // no admissible pair: vacuous inequality
  } else {
    e.value = o.value;
    e.witness = Witness{std::move(o.f), std::move(o.g)};
  }
  return e;
}

void check_inputs(const StochasticMatrix& a, const KernelSpace& k) {
  if (k.points == 0) throw UsageError("kernel space has no points");
  if (a.size() == 0) throw UsageError("empty matrix");
}

}  // namespace

bool KernelSpace::uniform() const {
  if (points == 0) return false;
  double diag = values[0];
  double off = points > 1 ? values[1] : 0.0;
  for (std::size_t x = 0; x < points; ++x)
    for (std::size_t y = 0; y < points; ++y)
      if (values[x * points + y] != (x == y ? diag : off)) return false;
  return true;
}

KernelSpace make_kernel(std::size_t points, std::vector<double> values, std::string label) {
  if (points == 0 || values.size() != points * points) throw UsageError("kernel table has the wrong size");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("kernel values must be finite and non-negative");
  return KernelSpace{points, std::move(values), std::move(label)};
}

KernelSpace metric_kernel(std::size_t points, const std::vector<double>& d, double p, std::string label) {
  if (points == 0 || d.size() != points * points) throw UsageError("metric table has the wrong size");
  if (!(p > 0.0)) throw UsageError("kernel exponent must be positive");
  auto at = [&](std::size_t x, std::size_t y) { return d[x * points + y]; };
  for (std::size_t x = 0; x < points; ++x) {
    if (at(x, x) != 0.0) throw UsageError("metric has a non-zero diagonal entry at " + std::to_string(x));
    for (std::size_t y = 0; y < points; ++y)
      if (at(x, y) != at(y, x) || !(at(x, y) >= 0.0)) throw UsageError("metric is not symmetric and non-negative");
  }
  for (std::size_t x = 0; x < points; ++x)
    for (std::size_t y = 0; y < points; ++y)
      for (std::size_t z = 0; z < points; ++z) {
        double side = at(x, y) + at(y, z);
        if (at(x, z) > side * (1.0 + 1e-12)) throw TriangleViolation(x, y, z);
      }
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = std::pow(d[i], p);
  return make_kernel(points, std::move(v), std::move(label));
}

KernelSpace uniform_kernel(std::size_t points) {
  std::vector<double> v(points * points, 1.0);
  for (std::size_t x = 0; x < points; ++x) v[x * points + x] = 0.0;
  return make_kernel(points, std::move(v), std::to_string(points) + "-point");
}

KernelSpace metric_power_kernel(const std::vector<std::vector<double>>& pts, double p, double q) {
  std::size_t n = pts.size();
  std::vector<double> v(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      double dist = 0.0;
      for (std::size_t c = 0; c < pts[x].size(); ++c) {
        double t = std::abs(pts[x][c] - pts[y][c]);
        if (q <= 0.0) {
          dist = std::max(dist, t);
        } else {
          dist += std::pow(t, q);
        }
      }
      if (q > 0.0) dist = std::pow(dist, 1.0 / q);
      v[x * n + y] = std::pow(dist, p);
    }
  return make_kernel(n, std::move(v), q <= 0.0 ? "linf^p" : "lq^p");
}

KernelSpace log_linf_kernel(const std::vector<std::vector<double>>& pts, double p) {
  std::size_t n = pts.size();
  std::vector<double> v(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      double dist = 0.0;
      for (std::size_t c = 0; c < pts[x].size(); ++c) dist = std::max(dist, std::abs(pts[x][c] - pts[y][c]));
      v[x * n + y] = std::pow(std::log1p(dist), p);
    }
  return make_kernel(n, std::move(v), "log-linf^p");
}

double poincare_ratio(const StochasticMatrix& a, const KernelSpace& k, const std::vector<std::uint32_t>& f,
                      const std::vector<std::uint32_t>& g) {
  std::size_t n = a.size();
  if (f.size() != n || g.size() != n) throw IncompatibleSizes("assignment length differs from matrix size");
  double s = 0.0;
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double kv = k(f[i], g[j]);
      s += kv;
      e += a.value(i, j) * kv;
    }
  if (e == 0.0) return s > 0.0 ? kInfinity : std::nan("");
  return s / (static_cast<double>(n) * e);
}

PoincareEstimate gamma_plus_exact(const StochasticMatrix& a, const KernelSpace& k, const ExactOptions& opt) {
  check_inputs(a, k);
  const std::size_t n = a.size();
  const std::size_t base = k.points;
  const bool pruned = opt.prune_symmetry && k.uniform();
  const std::size_t first_free = pruned ? 1 : 0;
  std::uint64_t g_count = count_assignments(base, n, opt.cap);
  std::uint64_t f_count = count_assignments(base, n - first_free, opt.cap);
  if (f_count > opt.cap / g_count) {
    throw EnumerationTooLarge("exhaustive search space exceeds the cap of " + std::to_string(opt.cap) +
                              " assignment pairs; use the search mode instead");
  }
  SparseRows rows = sparse_rows(a);
  const double nd = static_cast<double>(n);

  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    Outcome out;
    std::vector<std::uint32_t> f(n), g(n), free_digits(n - first_free);
    std::vector<double> col_s(base), col_e(n * base);
    std::vector<double> ps(n + 1), pe(n + 1);
    for (std::uint64_t fi = lo; fi < hi && !out.infinite; ++fi) {
      if (pruned) {
        decode(fi, base, free_digits);
        f[0] = 0;
        for (std::size_t i = 1; i < n; ++i) f[i] = free_digits[i - 1];
      } else {
        decode(fi, base, f);
      }
      std::fill(col_s.begin(), col_s.end(), 0.0);
      std::fill(col_e.begin(), col_e.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t x = 0; x < base; ++x) col_s[x] += k(f[i], x);
      for (std::size_t i = 0; i < n; ++i)
        for (auto [j, w] : rows.rows[i])
          for (std::size_t x = 0; x < base; ++x) col_e[j * base + x] += w * k(f[i], x);
      std::fill(g.begin(), g.end(), 0u);
      std::size_t from = 0;
      while (true) {
        for (std::size_t j = from; j < n; ++j) {
          ps[j + 1] = ps[j] + col_s[g[j]];
          pe[j + 1] = pe[j] + col_e[j * base + g[j]];
        }
        ++out.evaluated;
        double s = ps[n];
        double e = pe[n];
        if (e == 0.0) {
          if (s > 0.0) {
            out.infinite = true;
            out.f = f;
            out.g = g;
            break;
          }
        } else {
          double r = s / (nd * e);
          if (r > out.value) {
            out.value = r;
            out.f = f;
            out.g = g;
          }
        }
        from = advance(g, base, 0);
        if (from == n) break;
      }
    }
    return out;
  };
  auto parts = run_workers(f_count, opt.workers, work);
  return to_estimate(combine(parts), EstimateKind::Exact, pruned ? "exhaustive (f(0) fixed)" : "exhaustive");
}

PoincareEstimate gamma_exact(const StochasticMatrix& a, const KernelSpace& k, const ExactOptions& opt) {
  check_inputs(a, k);
  const std::size_t n = a.size();
  const std::size_t base = k.points;
  const bool pruned = opt.prune_symmetry && k.uniform();
  const std::size_t first_free = pruned ? 1 : 0;
  std::uint64_t total = count_assignments(base, n - first_free, opt.cap);
  DenseMatrix ad = to_dense(a);
  const double nd = static_cast<double>(n);

  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    Outcome out;
    std::vector<std::uint32_t> f(n, 0), free_digits(n - first_free);
    decode(lo, base, free_digits);
    for (std::size_t i = first_free; i < n; ++i) f[i] = free_digits[i - first_free];
    std::vector<double> ps(n + 1), pe(n + 1);
    std::size_t from = 0;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      for (std::size_t t = from; t < n; ++t) {
        double s = k(f[t], f[t]);
        double e = ad(t, t) * s;
        for (std::size_t j = 0; j < t; ++j) {
          double k1 = k(f[t], f[j]);
          double k2 = k(f[j], f[t]);
          s += k1 + k2;
          e += ad(t, j) * k1 + ad(j, t) * k2;
        }
        ps[t + 1] = ps[t] + s;
        pe[t + 1] = pe[t] + e;
      }
      ++out.evaluated;
      double s = ps[n];
      double e = pe[n];
      if (e == 0.0) {
        if (s > 0.0) {
          out.infinite = true;
          out.f = f;
          out.g = f;
          break;
        }
      } else {
        double r = s / (nd * e);
        if (r > out.value) {
          out.value = r;
          out.f = f;
          out.g = f;
        }
      }
      from = advance(f, base, first_free);
      if (from == n) break;
    }
    return out;
  };
  auto parts = run_workers(total, opt.workers, work);
  return to_estimate(combine(parts), EstimateKind::Exact, pruned ? "exhaustive (f(0) fixed)" : "exhaustive");
}

namespace {

// Alternating coordinate ascent on sum K(f_i,g_j) / (n sum a_ij K(f_i,g_j)).
// With same_map set the pair is tied (f = g) and only f moves.
class Ascent {
 public:
  Ascent(const StochasticMatrix& a, const KernelSpace& k, bool same_map)
      : n_(a.size()), base_(k.points), k_(k), rows_(sparse_rows(a)), same_(same_map) {}

  Outcome run(Rng& rng, std::size_t max_sweeps) {
    f_.resize(n_);
    g_.resize(n_);
    for (auto& x : f_) x = static_cast<std::uint32_t>(rng.below(base_));
    if (same_) {
      g_ = f_;
    } else {
      for (auto& x : g_) x = static_cast<std::uint32_t>(rng.below(base_));
    }
    double current = evaluate_exact();
    Outcome out;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
      bool moved = false;
      for (int side = 0; side < (same_ ? 1 : 2); ++side) {
        for (std::size_t i = 0; i < n_; ++i) {
          auto [value, point] = best_move(side, i);
          auto& target = side == 0 ? f_ : g_;
          if (point != target[i] && improves(value, current)) {
            target[i] = point;
            if (same_) g_[i] = point;
            current = evaluate_exact();
            moved = true;
            if (current == kInfinity) break;
          }
        }
        if (current == kInfinity) break;
      }
      if (!moved || current == kInfinity) break;
    }
    out.value = current;
    out.infinite = current == kInfinity;
    out.f = f_;
    out.g = g_;
    out.evaluated = evaluations_;
    return out;
  }

 private:
  static bool improves(double candidate, double current) {
    if (candidate == kNegInf) return false;
    if (current == kNegInf) return true;
    if (candidate == kInfinity) return current != kInfinity;
    return candidate > current + 1e-12 * std::max(1.0, std::abs(current));
  }

  double evaluate_exact() {
    ++evaluations_;
    double s = 0.0;
    double e = 0.0;
    std::vector<double> hist_f(base_, 0.0), hist_g(base_, 0.0);
    for (auto x : f_) hist_f[x] += 1.0;
    for (auto x : g_) hist_g[x] += 1.0;
    for (std::size_t x = 0; x < base_; ++x)
      for (std::size_t y = 0; y < base_; ++y) s += hist_f[x] * hist_g[y] * k_(x, y);
    for (std::size_t i = 0; i < n_; ++i)
      for (auto [j, w] : rows_.rows[i]) e += w * k_(f_[i], g_[j]);
    s_ = s;
    e_ = e;
    return classify(s, e);
  }

  double classify(double s, double e) const {
    if (e == 0.0) return s > 0.0 ? kInfinity : kNegInf;
    return s / (static_cast<double>(n_) * e);
  }

  // Best value reachable by moving coordinate i of f (side 0) or g (side 1).
  // Only the terms touching that coordinate are recomputed.
  std::pair<double, std::uint32_t> best_move(int side, std::size_t i) {
    auto& mine = side == 0 ? f_ : g_;
    const auto& other = side == 0 ? g_ : f_;
    std::uint32_t cur = mine[i];
    std::vector<double> hist(base_, 0.0);
    for (auto x : other) hist[x] += 1.0;
    if (same_) hist[cur] -= 1.0;
    auto terms = [&](std::uint32_t y) -> std::pair<double, double> {
      double s = 0.0;
      double e = 0.0;
      if (same_) {
        s = k_(y, y);
        for (std::size_t x = 0; x < base_; ++x) s += hist[x] * (k_(y, x) + k_(x, y));
        for (auto [j, w] : rows_.rows[i]) e += j == i ? w * k_(y, y) : w * (k_(y, f_[j]) + k_(f_[j], y));
      } else if (side == 0) {
        for (std::size_t x = 0; x < base_; ++x) s += hist[x] * k_(y, x);
        for (auto [j, w] : rows_.rows[i]) e += w * k_(y, g_[j]);
      } else {
        for (std::size_t x = 0; x < base_; ++x) s += hist[x] * k_(x, y);
        for (auto [j, w] : rows_.rows[i]) e += w * k_(f_[j], y);
      }
      return {s, e};
    };
    auto [s_cur, e_cur] = terms(cur);
    double best = kNegInf;
    std::uint32_t arg = cur;
    for (std::uint32_t y = 0; y < base_; ++y) {
      auto [sy, ey] = terms(y);
      double s = s_ - s_cur + sy;
      double e = e_ - e_cur + ey;
      if (e <= 1e-12 * std::max({e_, ey, 1e-300})) {
        // Cancellation can hide an exact zero; recompute from scratch.
        double keep_s = s_, keep_e = e_;
        mine[i] = y;
        if (same_) g_[i] = y;
        evaluate_exact();
        s = s_;
        e = e_;
        mine[i] = cur;
        if (same_) g_[i] = cur;
        s_ = keep_s;
        e_ = keep_e;
      }
      double v = classify(s, e);
      if (v > best) {
        best = v;
        arg = y;
      }
    }
    return {best, arg};
  }

  std::size_t n_, base_;
  const KernelSpace& k_;
  SparseRows rows_;
  bool same_;
  std::vector<std::uint32_t> f_, g_;
  double s_ = 0, e_ = 0;
  std::uint64_t evaluations_ = 0;
};

PoincareEstimate search(const StochasticMatrix& a, const KernelSpace& k, const SearchOptions& opt, bool same) {
  check_inputs(a, k);
  Ascent ascent(a, k, same);
  std::uint64_t state = opt.seed;
  std::vector<Outcome> parts;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, opt.restarts); ++r) {
    Rng rng(splitmix64(state));
    parts.push_back(ascent.run(rng, opt.max_sweeps));
    if (parts.back().infinite) break;
  }
  Outcome best = combine(parts);
  return to_estimate(std::move(best), EstimateKind::LowerBound, "coordinate ascent");
}

}  // namespace

PoincareEstimate gamma_plus_search(const StochasticMatrix& a, const KernelSpace& k, const SearchOptions& opt) {
  return search(a, k, opt, false);
}

PoincareEstimate gamma_search(const StochasticMatrix& a, const KernelSpace& k, const SearchOptions& opt) {
  return search(a, k, opt, true);
}

namespace {

// Number of ordered pairs (u, v) at each graph distance.
std::vector<std::uint64_t> distance_histogram(const Multigraph& g) {
  std::size_t n = g.vertices();
  std::vector<std::uint64_t> hist;
  std::size_t d = g.degree();
  std::vector<std::uint32_t> nb(n * d), dist(n), queue;
  for (std::size_t i = 0; i < n * d; ++i) nb[i] = static_cast<std::uint32_t>(g.neighbor(i / d, i % d));
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    queue.assign(1, static_cast<std::uint32_t>(s));
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t u = queue[head];
      if (dist[u] >= hist.size()) hist.resize(dist[u] + 1, 0);
      ++hist[dist[u]];
      for (std::size_t p = 0; p < d; ++p) {
        std::uint32_t v = nb[u * d + p];
        if (dist[v] == kUnreachable) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    if (queue.size() != n) throw Disconnected("graph is disconnected");
  }
  return hist;
}

PoincareEstimate frechet_estimate(double numerator, double denominator, std::size_t n) {
  PoincareEstimate e;
  e.kind = EstimateKind::LowerBound;
  e.method = "frechet embedding";
  e.evaluated = 1;
  Witness w;
  for (std::size_t v = 0; v < n; ++v) w.f.push_back(static_cast<std::uint32_t>(v));
  w.g = w.f;
  if (denominator == 0.0) {
    e.value = numerator > 0.0 ? kInfinity : 1.0;
  } else {
    e.value = numerator / (static_cast<double>(n) * denominator);
  }
  e.witness = std::move(w);
  return e;
}

}  // namespace

PoincareEstimate frechet_lower_bound(const Multigraph& g, double p) {
  std::size_t n = g.vertices();
  auto hist = distance_histogram(g);
  double num = 0.0;
  for (std::size_t r = 1; r < hist.size(); ++r)
    num += static_cast<double>(hist[r]) * std::pow(std::log1p(static_cast<double>(r)), p);
  // Every non-loop slot joins vertices at distance 1.
  std::size_t moving = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t q = 0; q < g.degree(); ++q) moving += g.neighbor(u, q) != u;
  double den = std::pow(std::log(2.0), p) * static_cast<double>(moving) / static_cast<double>(g.degree());
  return frechet_estimate(num, den, n);
}

PoincareEstimate frechet_lower_bound_cesaro(const Multigraph& g, std::size_t m, double p) {
  if (m == 0) throw UsageError("cesaro needs m >= 1");
  std::size_t n = g.vertices();
  if (m == 1) {
    if (n == 1) return frechet_estimate(0.0, 0.0, 1);
    throw Disconnected("A_1(G) has only loops");
  }
  auto hist = distance_histogram(g);
  std::size_t reach = m - 1;
  double num = 0.0;
  for (std::size_t r = 1; r < hist.size(); ++r) {
    std::size_t hops = (r + reach - 1) / reach;
    num += static_cast<double>(hist[r]) * std::pow(std::log1p(static_cast<double>(hops)), p);
  }
  // Off-diagonal mass of A_m(G): every off-diagonal entry joins vertices at
  // distance 1 in A_m(G). Diagonal mass needs closed-walk counts.
  double trace = 0.0;
  double inv_d = 1.0 / static_cast<double>(g.degree());
  std::vector<double> cur(n), next(n);
  std::vector<std::uint32_t> support, next_support;
  std::vector<char> mark(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[v] = 1.0;
    support.assign(1, static_cast<std::uint32_t>(v));
    double closed = 1.0;
    for (std::size_t s = 1; s < m; ++s) {
      next_support.clear();
      for (auto u : support) {
        double x = cur[u] * inv_d;
        for (std::size_t q = 0; q < g.degree(); ++q) {
          std::size_t w = g.neighbor(u, q);
          if (!mark[w]) {
            mark[w] = 1;
            next[w] = 0.0;
            next_support.push_back(static_cast<std::uint32_t>(w));
          }
          next[w] += x;
        }
      }
      for (auto u : support) cur[u] = 0.0;
      for (auto w : next_support) {
        cur[w] = next[w];
        mark[w] = 0;
      }
      support.swap(next_support);
      closed += cur[v];
    }
    trace += closed / static_cast<double>(m);
  }
  double den = std::pow(std::log(2.0), p) * (static_cast<double>(n) - trace);
  return frechet_estimate(num, den, n);
}

CoarseReport coarse_obstruction_report(const Multigraph& g, double gamma_plus, double p) {
  if (!(gamma_plus > 0.0)) throw UsageError("gamma_plus must be positive");
  std::size_t n = g.vertices();
  auto hist = distance_histogram(g);
  std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
  std::uint64_t at_least = 0;
  std::size_t threshold = 0;
  for (std::size_t r = hist.size(); r-- > 0;) {
    at_least += hist[r];
    if (2 * at_least >= pairs) {
      threshold = r;
      break;
    }
  }
  CoarseReport rep;
  rep.threshold_distance = static_cast<double>(threshold);
  rep.log_n = std::log(static_cast<double>(n));
  rep.c = rep.log_n > 0.0 ? rep.threshold_distance / rep.log_n : 0.0;
  rep.gamma_plus = gamma_plus;
  rep.p = p;
  double bound = gamma_plus == kInfinity ? 0.0 : rep.threshold_distance / std::pow(2.0 * gamma_plus, 1.0 / p);
  rep.distortion_lower_bound = std::max(1.0, bound);
  return rep;
}

}  // namespace nlsg
