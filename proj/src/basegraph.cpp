#include "nlsg/basegraph.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "nlsg/errors.hpp"

namespace nlsg {

HeatWeights heat_weights(std::size_t n, double t) {
  if (n == 0 || n > kMaxCubeDimension) throw UsageError("cube dimension must be in 1..20");
  if (!(t >= 0.0)) throw UsageError("heat time must be non-negative");
  HeatWeights h;
  h.tau = (1.0 - std::exp(-t)) / 2.0;
  for (std::size_t j = 0; j <= n; ++j)
    h.by_weight.push_back(std::pow(h.tau, static_cast<double>(j)) * std::pow(1.0 - h.tau, static_cast<double>(n - j)));
  return h;
}

Truncation truncate(std::size_t n, double t, double p) {
  HeatWeights hw = heat_weights(n, t);
  Truncation tr;
  tr.n = n;
  tr.t = t;
  tr.tau = hw.tau;
  double nd = static_cast<double>(n);
  tr.cutoff = 4.0 * tr.tau * nd;
  tr.max_weight = std::min(n, static_cast<std::size_t>(std::floor(tr.cutoff)));
  if (tr.max_weight == 0) throw EmptyTruncation("4 tau n < 1 keeps only the identity generator");
  tr.quantum = hw.by_weight[tr.max_weight];
  std::uint64_t degree = 0;
  std::vector<double> binom(n + 1, 1.0);
  for (std::size_t j = 1; j <= n; ++j) binom[j] = binom[j - 1] * static_cast<double>(n - j + 1) / static_cast<double>(j);
  for (std::size_t j = 0; j <= tr.max_weight; ++j) {
    auto m = static_cast<std::uint64_t>(std::floor(hw.by_weight[j] / tr.quantum + 0.5));
    tr.multiplicity.push_back(m);
    degree += m * static_cast<std::uint64_t>(std::llround(binom[j]));
  }
  tr.degree = degree;
  tr.degree_bound = std::pow(tr.tau, -tr.cutoff) * std::pow(1.0 - tr.tau, -(1.0 - 4.0 * tr.tau) * nd);
  tr.feasibility_lhs = 18.0 * tr.tau * tr.tau * nd;
  tr.feasibility_rhs = 2.0 * p * std::log(nd) + std::log(4.0);
  tr.feasible = tr.feasibility_lhs >= tr.feasibility_rhs;
  if (!tr.feasible) {
    tr.warnings.push_back("18 tau^2 n = " + std::to_string(tr.feasibility_lhs) + " is below 2p log n + log 4 = " +
                          std::to_string(tr.feasibility_rhs) + "; the noise sandwich is not guaranteed");
  }
  if (static_cast<double>(tr.degree) > tr.degree_bound) tr.warnings.push_back("degree exceeds the analytic bound");

  std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> gens;
  for (std::uint64_t z = 0; z < size; ++z)
    if (static_cast<std::size_t>(__builtin_popcountll(z)) <= tr.max_weight) gens.push_back(z);
  std::size_t d = static_cast<std::size_t>(degree);
  if (size * d > std::numeric_limits<std::uint32_t>::max()) throw TooLarge("truncated Cayley graph has too many ports");
  std::vector<std::uint32_t> slots(size * d);
  for (std::uint64_t x = 0; x < size; ++x) {
    std::size_t port = 0;
    for (std::uint64_t z : gens) {
      std::uint64_t m = tr.multiplicity[__builtin_popcountll(z)];
      std::uint64_t y = x ^ z;
      for (std::uint64_t c = 0; c < m; ++c, ++port)
        slots[x * d + port] = static_cast<std::uint32_t>(y * d + port);
    }
  }
  tr.graph = Multigraph(size, d, std::move(slots));
  return tr;
}

NoiseSandwich noise_sandwich(const Truncation& tr, const CubeFunction& f, const CubeFunction& g, double p) {
  if (f.n != tr.n || g.n != tr.n || f.k != g.k) throw IncompatibleSizes("test functions do not match the cube");
  HeatWeights hw = heat_weights(tr.n, tr.t);
  std::uint64_t size = std::uint64_t{1} << tr.n;
  auto cost = [&](std::uint64_t x, std::uint64_t y) {
    double s = 0.0;
    for (std::size_t c = 0; c < f.k; ++c) {
      double d = f.at(x)[c] - g.at(y)[c];
      s += d * d;
    }
    return p == 2.0 ? s : std::pow(std::sqrt(s), p);
  };
  NoiseSandwich r;
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t y = 0; y < size; ++y) r.heat_form += hw.by_weight[__builtin_popcountll(x ^ y)] * cost(x, y);
  r.heat_form /= static_cast<double>(size);
  const Multigraph& gr = tr.graph;
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::size_t q = 0; q < gr.degree(); ++q) r.edge_form += cost(x, gr.neighbor(x, q));
  r.edge_form /= static_cast<double>(gr.ports());
  r.ratio = r.edge_form == 0.0 ? (r.heat_form == 0.0 ? 1.0 : kInfinity) : r.heat_form / r.edge_form;
  return r;
}

Multigraph quotient(const Multigraph& g, const BinaryCode& c_perp) {
  std::size_t n = c_perp.length();
  if (g.vertices() != (std::size_t{1} << n)) throw IncompatibleSizes("graph is not on F_2^n for the code length");
  CosetPartition part = cosets(c_perp);
  std::size_t q = part.representatives.size();
  // Every vertex of a coset must see the same coset histogram.
  NeighbourCounts counts(q);
  std::vector<std::uint32_t> hist(q);
  std::vector<char> done(q, 0);
  for (std::uint64_t x = 0; x < g.vertices(); ++x) {
    std::fill(hist.begin(), hist.end(), 0u);
    for (std::size_t p = 0; p < g.degree(); ++p) ++hist[part.index[g.neighbor(x, p)]];
    std::uint32_t X = part.index[x];
    std::vector<std::pair<std::uint32_t, std::uint32_t>> row;
    for (std::uint32_t Y = 0; Y < q; ++Y)
      if (hist[Y]) row.emplace_back(Y, hist[Y]);
    if (!done[X]) {
      counts[X] = std::move(row);
      done[X] = 1;
    } else if (counts[X] != row) {
      throw NotCayley("vertices of one coset see different neighbourhoods");
    }
  }
  try {
    return from_neighbour_counts(counts);
  } catch (const InvalidGraph& e) {
    throw NotCayley(std::string("quotient is not a regular multigraph: ") + e.what());
  }
}

NormBound norm_bound(const StochasticMatrix& a, double p, std::uint64_t seed) {
  if (!(p >= 1.0)) throw UsageError("p must be at least 1");
  NormBound nb;
  nb.p = p;
  if (p == 2.0) {
    nb.norm = spectrum(a).lambda;
    nb.certified = true;
  } else {
    std::size_t n = a.size();
    DenseMatrix m = to_dense(a);
    double q = p / (p - 1.0);
    auto apply = [&](const std::vector<double>& v) {
      std::vector<double> out(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += m(i, j) * v[j];
      return out;
    };
    auto center = [&](std::vector<double>& v) {
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(n);
      for (double& x : v) x -= mean;
    };
    auto norm = [&](const std::vector<double>& v, double e) {
      double s = 0.0;
      for (double x : v) s += std::pow(std::abs(x), e);
      return std::pow(s, 1.0 / e);
    };
    auto signed_pow = [](double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); };
    Rng rng(seed);
    for (int restart = 0; restart < 16; ++restart) {
      std::vector<double> f(n);
      for (double& x : f) x = rng.normal();
      center(f);
      for (int it = 0; it < 200; ++it) {
        double nf = norm(f, p);
        if (nf == 0.0) break;
        std::vector<double> af = apply(f);
        nb.norm = std::max(nb.norm, norm(af, p) / nf);
        std::vector<double> h(n);
        for (std::size_t i = 0; i < n; ++i) h[i] = signed_pow(af[i], p - 1.0);
        std::vector<double> u = apply(h);
        for (std::size_t i = 0; i < n; ++i) f[i] = signed_pow(u[i], q - 1.0);
        center(f);
      }
    }
    nb.norm = std::min(nb.norm, 1.0);
  }
  nb.gamma_plus_bound = nb.norm >= 1.0 ? kInfinity : std::pow(8.0, p) * std::pow(1.0 - nb.norm, -p);
  return nb;
}

std::pair<CubeFunction, CubeFunction> random_cube_pair(std::size_t n, std::size_t family, Rng& rng,
                                                       const BinaryCode* c_perp) {
  const std::size_t k = 2;
  CubeFunction f(n, k), g(n, k);
  std::uint64_t size = std::uint64_t{1} << n;
  switch (family % 4) {
    case 0:
      for (auto& v : f.values) v = rng.normal();
      for (auto& v : g.values) v = rng.normal();
      break;
    case 1: {
      // Low-degree Walsh polynomial, g = f.
      CubeFunction spec(n, k);
      for (std::uint64_t a = 0; a < size; ++a)
        if (__builtin_popcountll(a) <= 2)
          for (std::size_t c = 0; c < k; ++c) spec.at(a)[c] = rng.normal();
      f = inverse_wht(spec);
      g = f;
      break;
    }
    case 2: {
      // Weighted Hamming coordinates plus small independent noise on g.
      std::vector<double> w(n * k);
      for (auto& v : w) v = rng.normal();
      for (std::uint64_t x = 0; x < size; ++x)
        for (std::size_t c = 0; c < k; ++c) {
          double s = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            if ((x >> i) & 1) s += w[i * k + c];
          f.at(x)[c] = s;
          g.at(x)[c] = s + 0.1 * rng.normal();
        }
      break;
    }
    default: {
      if (c_perp != nullptr) {
        CosetPartition part = cosets(*c_perp);
        std::vector<double> vals(part.representatives.size() * k);
        for (auto& v : vals) v = rng.normal();
        for (std::uint64_t x = 0; x < size; ++x)
          for (std::size_t c = 0; c < k; ++c) f.at(x)[c] = vals[part.index[x] * k + c];
      } else {
        for (auto& v : f.values) v = rng.normal();
      }
      g = f;
      break;
    }
  }
  return {f, g};
}

BaseGraphReport build_base(std::size_t n, double t, std::uint64_t seed, std::size_t sandwich_pairs) {
  auto start = std::chrono::steady_clock::now();
  BaseGraphReport r;
  r.n = n;
  r.t = t;
  r.seed = seed;
  r.code = good_code(n, seed);
  r.dual_code = dual(r.code.code);
  r.truncation = truncate(n, t);
  r.base = quotient(r.truncation.graph, r.dual_code);
  r.degree_preserved = r.base.degree() == r.truncation.graph.degree();
  r.spectral = spectrum(r.base);
  r.norm = norm_bound(normalized_adjacency(r.base), 2.0);

  Rng rng(derive_seed(seed, 1));
  CosetPartition part = cosets(r.dual_code);
  int m = r.code.distance;
  for (int trial = 0; trial < 8; ++trial) {
    CubeFunction f(n, 1);
    std::vector<double> vals(part.representatives.size());
    for (auto& v : vals) v = rng.normal();
    for (std::uint64_t x = 0; x < f.size(); ++x) f.at(x)[0] = vals[part.index[x]];
    double rms = l2_norm(f);
    CubeFunction fh = wht(f);
    for (std::uint64_t a = 1; a < fh.size(); ++a)
      if (__builtin_popcountll(a) < m) r.fourier_tail = std::max(r.fourier_tail, std::abs(fh.at(a)[0]) / rms);
  }

  r.sandwich_min = kInfinity;
  r.sandwich_max = 0.0;
  for (std::size_t i = 0; i < sandwich_pairs; ++i) {
    auto [f, g] = random_cube_pair(n, i, rng, &r.dual_code);
    double ratio = noise_sandwich(r.truncation, f, g, 2.0).ratio;
    r.sandwich_ratios.push_back(ratio);
    r.sandwich_min = std::min(r.sandwich_min, ratio);
    r.sandwich_max = std::max(r.sandwich_max, ratio);
  }

  StochasticMatrix a = normalized_adjacency(r.base);
  SearchOptions so;
  so.seed = derive_seed(seed, 2);
  so.restarts = 8;
  r.search_bounds.emplace_back("two-point exact", gamma_plus_exact(a, two_point_kernel()));
  r.search_bounds.emplace_back("three-point line squared",
                               gamma_plus_search(a, metric_power_kernel({{0.0}, {1.0}, {2.0}}, 2.0), so));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace nlsg
