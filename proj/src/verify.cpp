#include "nlsg/verify.hpp"

#include <algorithm>
#include <cmath>

#include "nlsg/basegraph.hpp"
#include "nlsg/construction.hpp"
#include "nlsg/cotype.hpp"
#include "nlsg/errors.hpp"
#include "nlsg/graph_ops.hpp"
#include "nlsg/poincare.hpp"
#include "nlsg/random.hpp"
#include "nlsg/spectral.hpp"

namespace nlsg {

namespace {

// Counts instances of one check; an instance fails if any of its
// inequalities value <= bound is violated beyond the slack.
class Tally {
 public:
  Tally(std::string suite, std::string check, double slack = 1e-9) : slack_(slack) {
    r_.suite = std::move(suite);
    r_.check = std::move(check);
    r_.worst_margin = kInfinity;
  }

  void begin() {
    ++r_.instances;
    failed_ = false;
  }
  void bound(double value, double limit) {
    double margin;
    if (std::isinf(limit) && limit > 0) {
      margin = kInfinity;
    } else if (std::isinf(value) || std::isnan(value)) {
      margin = -kInfinity;
    } else {
      margin = (limit - value) / std::max(1.0, std::abs(limit));
    }
    r_.worst_margin = std::min(r_.worst_margin, margin);
    if (margin < -slack_ && !failed_) {
      failed_ = true;
      ++r_.failures;
    }
  }
  void at_most(double value, double limit) {
    begin();
    bound(value, limit);
  }
  void expect(bool ok) {
    begin();
    if (!ok) {
      failed_ = true;
      ++r_.failures;
    }
  }
  void note(std::string text) { r_.note = std::move(text); }
  CheckResult result() const {
    CheckResult r = r_;
    if (r.worst_margin == kInfinity) r.worst_margin = std::nan("");
    return r;
  }

 private:
  CheckResult r_;
  double slack_;
  bool failed_ = false;
};

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

Multigraph petersen() {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return from_edge_list(10, e, {});
}

Multigraph cube3() {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t b = 1; b < 8; b <<= 1)
      if (x < (x ^ b)) e.emplace_back(x, x ^ b);
  return from_edge_list(8, e, {});
}

Multigraph connected_random(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Multigraph g = random_regular(n, d, rng);
  while (!is_connected(g)) g = random_regular(n, d, rng);
  return g;
}

ExactOptions exact_options(const VerifyOptions& opt) {
  ExactOptions ex;
  ex.workers = opt.workers;
  return ex;
}

std::vector<CheckResult> zigzag_suite(const std::vector<NamedGraph>& corpus, const VerifyOptions& opt) {
  Tally spec("zigzag", "spectral-bound");
  auto check_pair = [&](const Multigraph& g1, const Multigraph& g2) {
    double l1 = spectrum(g1).lambda, l2 = spectrum(g2).lambda;
    double lz = spectrum(zigzag(g1, g2)).lambda;
    spec.at_most(inverse_gap(lz), inverse_gap(l1) * inverse_gap(l2) * inverse_gap(l2));
  };
  for (std::size_t i = 0; i < 4 * opt.instances; ++i) {
    Rng rng(derive_seed(opt.seed, i));
    std::size_t d1 = pick(rng, 1, 8);
    Multigraph g1 = random_regular(pick(rng, 2, 64), d1, rng);
    Multigraph g2 = random_regular(d1, pick(rng, 1, 4), rng);
    check_pair(g1, g2);
  }
  for (const auto& c1 : corpus)
    for (const auto& c2 : corpus)
      if (c2.second.vertices() == c1.second.degree()) check_pair(c1.second, c2.second);
  spec.note("1/(1-lambda) of the product against the factor bound");

  Tally sub("zigzag", "submultiplicative");
  ExactOptions ex = exact_options(opt);
  KernelSpace k = two_point_kernel();
  for (std::size_t i = 0; i < opt.instances; ++i) {
    Rng rng(derive_seed(opt.seed ^ 0x5a5a, i));
    std::size_t d1 = pick(rng, 1, 5);
    std::size_t n1 = pick(rng, 1, 10 / d1);
    Multigraph g1 = random_regular(n1, d1, rng);
    Multigraph g2 = random_regular(d1, pick(rng, 1, 3), rng);
    double a = gamma_plus_exact(normalized_adjacency(g1), k, ex).value;
    double b = gamma_plus_exact(normalized_adjacency(g2), k, ex).value;
    double z = gamma_plus_exact(normalized_adjacency(zigzag(g1, g2)), k, ex).value;
    sub.at_most(z, a * b * b);
  }
  sub.note("exact two-point gamma_plus, products on at most 10 vertices");
  return {spec.result(), sub.result()};
}

StochasticMatrix small_matrix(Rng& rng, std::size_t max_n) {
  std::size_t n = pick(rng, 2, max_n);
  return normalized_adjacency(random_regular(n, pick(rng, 1, 4), rng));
}

std::vector<CheckResult> sandwich_suite(const VerifyOptions& opt) {
  Tally dbl("sandwich", "doubling");
  Tally com("sandwich", "commute");
  ExactOptions ex = exact_options(opt);
  KernelSpace k = two_point_kernel();
  for (std::size_t i = 0; i < opt.instances; ++i) {
    Rng rng(derive_seed(opt.seed ^ 0xd0b1e, i));
    StochasticMatrix a = small_matrix(rng, 5);
    SandwichReport d = doubling_check(a, k, ex);
    dbl.begin();
    dbl.bound(d.lower, d.middle);
    dbl.bound(d.middle, d.upper);
    SandwichReport c = commute_check(a, pick(rng, 1, 3), k, ex);
    com.at_most(c.middle, c.upper);
  }
  dbl.note("(2/5) gamma(double A) <= gamma_plus(A) <= 2 gamma(double A)");
  com.note("gamma(double A_m(A)) <= 9 gamma(A_m(double A))");
  return {dbl.result(), com.result()};
}

std::vector<CheckResult> cotype_suite(const VerifyOptions& opt) {
  Tally disp("cotype", "displacement");
  Tally frozen("cotype", "frozen-c2");
  Tally decay("cotype", "cesaro-decay");
  Tally kappa("cotype", "power-vs-average");
  auto sweep = cotype_sweep(4 * opt.instances, opt.seed);
  for (const auto& s : sweep) {
    disp.expect(s.report.displacement_holds);
    if (!s.report.degenerate) {
      frozen.at_most(s.report.minimal_c2, kFrozenC2);
      kappa.at_most(s.report.power_ratio, kFrozenKappa);
    }
    DecayReport d = decay_check(normalized_adjacency(s.graph), s.report.m, kFrozenC2);
    decay.at_most(d.gamma_cesaro, d.bound);
  }
  frozen.note("non-degenerate sweep instances against the frozen constant");

  Tally mart("cotype", "martingale-orthogonality", 0.0);
  for (std::size_t i = 0; i < opt.instances; ++i) {
    Rng rng(derive_seed(opt.seed ^ 0x3a47, i));
    std::size_t n = pick(rng, 2, 32);
    StochasticMatrix a = normalized_adjacency(random_regular(n, pick(rng, 1, 6), rng));
    PointSet x(n, pick(rng, 1, 3));
    for (auto& v : x.x) v = rng.normal();
    MartingaleReport r = martingale_chain(a, pick(rng, 1, 8), x);
    mart.begin();
    mart.bound(std::abs(r.increment_sum - r.total), 1e-10 * std::max(1.0, r.total));
  }
  mart.note("sum of increments equals the total to 1e-10");
  return {disp.result(), frozen.result(), decay.result(), kappa.result(), mart.result()};
}

std::vector<CheckResult> basegraph_suite(const VerifyOptions& opt) {
  Tally sand("basegraph", "noise-sandwich");
  Tally deg("basegraph", "quotient-degree");
  Tally tail("basegraph", "fourier-tail", 0.0);
  for (std::size_t n : {10, 12}) {
    BaseGraphReport r = build_base(n, 0.1, derive_seed(opt.seed, n));
    for (double q : r.sandwich_ratios) {
      sand.begin();
      sand.bound(1.0 / 3.0, q);
      sand.bound(q, 3.0);
    }
    deg.expect(r.degree_preserved);
    tail.begin();
    tail.bound(r.fourier_tail, 1e-12);
  }
  sand.note("ratios in [1/3, 3], t = 0.1");
  return {sand.result(), deg.result(), tail.result()};
}

std::vector<CheckResult> linear_suite(const VerifyOptions& opt) {
  Tally lin("linear", "line-to-nonlinear");
  ExactOptions ex = exact_options(opt);
  for (std::size_t i = 0; i < 2 * opt.instances; ++i) {
    Rng rng(derive_seed(opt.seed ^ 0x1e7, i));
    StochasticMatrix a = small_matrix(rng, 5);
    std::vector<std::vector<double>> pts(3);
    for (auto& p : pts) p = {rng.uniform() * 2.0 - 1.0};
    double g = gamma_plus_exact(a, metric_power_kernel(pts, 2.0), ex).value;
    double inv = inverse_gap(spectrum(a).lambda);
    lin.at_most(g, 64.0 * inv * inv);
  }
  lin.note("three real points, p = 2, against 64 (1 - lambda)^-2");
  return {lin.result()};
}

std::vector<CheckResult> finisher_suite(const std::vector<NamedGraph>& corpus) {
  Tally shape("finisher", "degree-9-shape");
  Tally bound("finisher", "degree-9-bound");
  for (const auto& [name, g] : corpus) {
    if (g.degree() < 2) continue;
    FinishReport r = finish_degree9(g);
    shape.expect(r.graph.degree() == 9 && r.graph.vertices() == g.vertices() * g.degree());
    bound.at_most(r.gamma_plus_out, r.bound);
  }
  bound.note("spectral gamma_plus against 16 d^4 gamma_plus(H)");
  return {shape.result(), bound.result()};
}

std::vector<CheckResult> rvw_suite(const VerifyOptions& opt) {
  Tally base("rvw", "base-threshold");
  Tally counts("rvw", "level-counts");
  Tally rec("rvw", "level-recurrence");
  Tally half("rvw", "half-bound");
  RvwBaseSearch s = find_rvw_base(2, 4, std::max<std::size_t>(1, opt.instances / 10), opt.seed);
  base.expect(s.found);
  base.note("best lambda " + std::to_string(s.best_lambda) + " at degree " + std::to_string(s.best_degree) +
            ", threshold " + std::to_string(s.threshold));
  RvwReport r = rvw_iterate(s.graph, 2, 2);
  std::size_t n0 = s.graph.vertices(), d0 = s.graph.degree(), n = 1;
  for (const auto& l : r.levels) {
    n *= n0;
    counts.expect(l.vertices == n && l.degree == d0 * d0);
    rec.at_most(l.lambda, l.predicted);
    half.at_most(l.lambda, 0.5);
  }
  half.note("requires a base below the threshold");
  return {base.result(), counts.result(), rec.result(), half.result()};
}

std::vector<CheckResult> counterexample_suite(const VerifyOptions& opt) {
  Tally mono("counterexample", "cesaro-monotone");
  Tally plain("counterexample", "graph-monotone");
  CounterexampleReport r = counterexample_experiment({64, 128, 256, 512}, {1, 2, 4}, 4, 2, opt.seed);
  for (const auto& f : r.fits) mono.expect(f.monotone);
  double prev = 0.0;
  for (const auto& row : r.rows) {
    if (row.t != 1) continue;
    plain.expect(row.graph_frechet_bound >= prev);
    prev = row.graph_frechet_bound;
  }
  return {mono.result(), plain.result()};
}

}  // namespace

std::vector<NamedGraph> default_corpus() {
  return {
      {"triangle", cycle(3)},
      {"k4", from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {})},
      {"petersen", petersen()},
      {"cube3", cube3()},
      {"cycle-loops-9", cycle_with_loops(9)},
      {"complete-loops-5", complete_with_loops(5)},
      {"random-3-20", connected_random(20, 3, 11)},
      {"random-4-32", connected_random(32, 4, 3)},
      {"random-8-64", connected_random(64, 8, 5)},
  };
}

std::vector<std::string> suite_names() {
  return {"zigzag", "sandwich", "cotype", "basegraph", "linear", "finisher", "rvw", "counterexample"};
}

std::vector<CheckResult> run_suite(const std::string& name, const std::vector<NamedGraph>& corpus,
                                   const VerifyOptions& opt) {
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, corpus, opt);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (name == "zigzag") return zigzag_suite(corpus, opt);
  if (name == "sandwich") return sandwich_suite(opt);
  if (name == "cotype") return cotype_suite(opt);
  if (name == "basegraph") return basegraph_suite(opt);
  if (name == "linear") return linear_suite(opt);
  if (name == "finisher") return finisher_suite(corpus);
  if (name == "rvw") return rvw_suite(opt);
  if (name == "counterexample") return counterexample_suite(opt);
  throw UsageError("unknown suite '" + name + "'");
}

}  // namespace nlsg
