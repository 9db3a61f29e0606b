#include "nlsg/construction.hpp"

#include <algorithm>
#include <cmath>

#include "nlsg/errors.hpp"
#include "nlsg/random.hpp"

namespace nlsg {

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b, const char* what) {
  std::size_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw PlanInfeasible(std::string(what) + " overflows");
  return r;
}

std::size_t checked_pow(std::size_t b, std::size_t e, const char* what) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = checked_mul(r, b, what);
  return r;
}

LevelReport level_report(std::size_t level, const Multigraph& g, double predicted) {
  SpectralReport s = spectrum(g);
  LevelReport r;
  r.level = level;
  r.vertices = g.vertices();
  r.degree = g.degree();
  r.lambda = s.lambda;
  r.gamma_plus = s.gamma_plus;
  r.predicted = predicted;
  r.within_bound = std::isnan(predicted) || r.lambda <= predicted + 1e-9;
  r.method = s.method;
  return r;
}

void check_ports(std::size_t vertices, std::size_t degree, std::size_t cap) {
  if (vertices > cap / std::max<std::size_t>(degree, 1)) {
    throw DegreeCapExceeded(std::to_string(vertices) + " vertices of degree " + std::to_string(degree) +
                            " exceed the port cap");
  }
}

bool within(double value, double bound) { return value <= bound || value <= bound * (1.0 + 1e-9); }

}  // namespace

double rvw_bound(double lambda1, double lambda2) { return 1.0 - (1.0 - lambda1) * (1.0 - lambda2) * (1.0 - lambda2); }

double rvw_threshold(std::size_t t0) {
  return 1.0 - std::pow(2.0 - std::pow(2.0, 1.0 - static_cast<double>(t0)), -0.5);
}

RvwReport rvw_iterate(const Multigraph& h, std::size_t t0, std::size_t depth, std::size_t cap) {
  if (t0 == 0 || depth == 0) throw UsageError("rvw iteration needs t0 >= 1 and depth >= 1");
  std::size_t d0 = h.degree();
  std::size_t n0 = h.vertices();
  if (checked_pow(d0, 2 * t0, "d0^(2 t0)") != n0) {
    throw PlanInfeasible("base graph needs deg^(2 t0) = " + std::to_string(checked_pow(d0, 2 * t0, "")) +
                         " vertices, has " + std::to_string(n0));
  }
  RvwReport rep;
  rep.t0 = t0;
  rep.threshold = rvw_threshold(t0);
  double lh = spectrum(h).lambda;
  rep.base_lambda = lh;
  rep.base_meets_threshold = lh <= rep.threshold;
  Multigraph g = power(h, 2, cap);
  rep.levels.push_back(level_report(1, g, lh * lh));
  for (std::size_t i = 1; i < depth; ++i) {
    double prev = rep.levels.back().lambda;
    check_ports(g.vertices() * n0, d0 * d0, cap);
    g = zigzag(power(g, t0, cap), h);
    rep.levels.push_back(level_report(i + 1, g, rvw_bound(std::pow(prev, static_cast<double>(t0)), lh)));
  }
  return rep;
}

RvwBaseSearch find_rvw_base(std::size_t t0, std::size_t max_degree, std::size_t attempts, std::uint64_t seed) {
  if (t0 == 0) throw UsageError("t0 must be positive");
  RvwBaseSearch out;
  out.threshold = rvw_threshold(t0);
  for (std::size_t d = 2; d <= max_degree; ++d) {
    std::size_t n = checked_pow(d, 2 * t0, "base size");
    for (std::size_t a = 0; a < attempts; ++a) {
      Rng rng(derive_seed(seed, d * 1000003 + a));
      Multigraph g = random_regular(n, d, rng);
      double lam = spectrum(g).lambda;
      ++out.tried;
      if (out.tried == 1 || lam < out.best_lambda) {
        out.best_lambda = lam;
        out.best_degree = d;
        out.graph = std::move(g);
      }
      if (lam <= out.threshold) {
        out.found = true;
        return out;
      }
    }
  }
  return out;
}

double preset_base_size(std::size_t t0, std::size_t k) {
  return std::exp(std::pow(4.0 * static_cast<double>(t0), static_cast<double>(k)));
}

namespace {

struct SuperStep {
  Multigraph cesaro_graph;
  Multigraph completed;
  Multigraph next;
};

SuperStep super_step(const Multigraph& f, const Multigraph& base, std::size_t t0, std::size_t cap) {
  SuperStep s;
  s.cesaro_graph = cesaro(f, t0, cap);
  s.completed = edge_complete(s.cesaro_graph, base.vertices());
  check_ports(s.completed.vertices() * base.vertices(), base.degree() * base.degree(), cap);
  s.next = zigzag(s.completed, base);
  return s;
}

void check_super(const Multigraph& base, std::size_t t0) {
  std::size_t d0 = base.degree();
  std::size_t need = checked_mul(t0, checked_pow(d0, 2 * (t0 - 1), "degree"), "degree");
  if (t0 == 0 || need > base.vertices()) {
    throw PlanInfeasible("super iteration needs t0 d0^(2(t0-1)) = " + std::to_string(need) + " <= n0 = " +
                         std::to_string(base.vertices()));
  }
}

}  // namespace

std::vector<Multigraph> super_family(const Multigraph& base, std::size_t t0, std::size_t depth, std::size_t cap) {
  check_super(base, t0);
  std::vector<Multigraph> fam{base, edge_complete(base, base.degree() * base.degree())};
  while (fam.size() <= depth) fam.push_back(super_step(fam.back(), base, t0, cap).next);
  fam.resize(std::min(fam.size(), depth + 1));
  return fam;
}

std::vector<SuperLevel> super_iterate(const Multigraph& base, const SuperOptions& opt) {
  check_super(base, opt.t0);
  std::vector<SuperLevel> out;
  double g0 = spectrum(base).gamma_plus;
  auto searches = [&](const Multigraph& g, SuperLevel& lvl) {
    if (g.vertices() > opt.search_max_vertices) return;
    StochasticMatrix a = normalized_adjacency(g);
    SearchOptions so;
    so.restarts = opt.restarts;
    so.seed = derive_seed(opt.seed, lvl.level);
    lvl.search.emplace_back("two-point", gamma_plus_search(a, two_point_kernel(), so));
    lvl.search.emplace_back("three-point line squared",
                            gamma_plus_search(a, metric_power_kernel({{0.0}, {1.0}, {2.0}}, 2.0), so));
  };
  SuperLevel l0;
  l0.level = 0;
  l0.vertices = base.vertices();
  l0.degree = base.degree();
  l0.gamma_plus = g0;
  l0.recursive_bound = kInfinity;
  searches(base, l0);
  out.push_back(l0);
  if (opt.depth == 0) return out;
  Multigraph f = edge_complete(base, base.degree() * base.degree());
  SuperLevel l1;
  l1.level = 1;
  l1.vertices = f.vertices();
  l1.degree = f.degree();
  l1.gamma_plus = spectrum(f).gamma_plus;
  // Edge completion at most doubles the constant.
  l1.recursive_bound = 2.0 * g0;
  l1.within_bound = within(l1.gamma_plus, l1.recursive_bound);
  searches(f, l1);
  out.push_back(l1);
  for (std::size_t j = 2; j <= opt.depth; ++j) {
    SuperStep s = super_step(f, base, opt.t0, opt.cap);
    SuperLevel lvl;
    lvl.level = j;
    lvl.vertices = s.next.vertices();
    lvl.degree = s.next.degree();
    lvl.gamma_plus_cesaro = spectrum(s.cesaro_graph).gamma_plus;
    lvl.gamma_plus_completed = spectrum(s.completed).gamma_plus;
    lvl.gamma_plus = spectrum(s.next).gamma_plus;
    lvl.recursive_bound = 2.0 * lvl.gamma_plus_cesaro * g0 * g0;
    lvl.within_bound = within(lvl.gamma_plus, lvl.gamma_plus_completed * g0 * g0) &&
                       within(lvl.gamma_plus_completed, 2.0 * lvl.gamma_plus_cesaro) &&
                       within(lvl.gamma_plus, lvl.recursive_bound);
    searches(s.next, lvl);
    out.push_back(std::move(lvl));
    f = std::move(s.next);
  }
  return out;
}

DiagonalPlan plan_diagonalization(const FamilyTable& table, const std::vector<double>& c,
                                  const std::vector<double>& eps) {
  std::size_t K = table.sizes.size();
  if (K == 0 || table.degrees.size() != K || c.size() != K || eps.size() != K) {
    throw UsageError("family table, constants and exponents must have one entry per k");
  }
  DiagonalPlan plan;
  for (std::size_t k = 0; k < K; ++k) {
    if (!(c[k] > 0.0) || !(eps[k] > 0.0)) throw UsageError("constants and exponents must be positive");
    double m = std::ceil(std::pow(2.0 * c[k] * c[k] * c[k], 1.0 / eps[k]));
    if (!(m >= 2.0)) throw PlanInfeasible("m_" + std::to_string(k + 1) + " < 2 makes A_m a union of loops");
    if (m > 64.0) throw PlanInfeasible("m_" + std::to_string(k + 1) + " is beyond desk scale");
    plan.m.push_back(static_cast<std::size_t>(m));
  }
  auto grow = [&](std::size_t k) -> long double {
    // m_k d_k^(2 m_k), as a long double to survive overflow.
    return static_cast<long double>(plan.m[k]) *
           std::pow(static_cast<long double>(table.degrees[k]), 2.0L * plan.m[k]);
  };
  for (std::size_t k = 0; k < K; ++k) {
    long double thr = static_cast<long double>(k + 1);
    if (k + 1 < K) thr = std::max(thr, grow(k + 1));
    const auto& sizes = table.sizes[k];
    auto it = std::find_if(sizes.begin(), sizes.end(), [&](std::size_t s) { return static_cast<long double>(s) > thr; });
    if (it == sizes.end()) throw PlanInfeasible("family " + std::to_string(k + 1) + " never grows past the threshold");
    plan.j.push_back(static_cast<std::size_t>(it - sizes.begin()));
  }
  auto size_of = [&](std::size_t h) { return table.sizes[h][plan.j[h]]; };
  auto first_above = [&](long double thr) -> std::size_t {
    for (std::size_t h = 0; h < K; ++h)
      if (static_cast<long double>(size_of(h)) > thr) return h;
    throw PlanInfeasible("no family member exceeds the required size");
  };
  auto degree_after = [&](std::size_t h) {
    return checked_mul(plan.m[h], checked_pow(table.degrees[h], 2 * (plan.m[h] - 1), "degree"), "degree");
  };
  for (std::size_t k = 0; k < K; ++k) {
    DiagonalEntry e;
    e.k = k + 1;
    e.base_vertices = size_of(k);
    std::size_t vertices = e.base_vertices;
    std::size_t degree = table.degrees[k];
    std::size_t prev = k;
    auto push = [&](std::size_t i, std::size_t h) {
      std::size_t width = size_of(h);
      if (degree > width) throw PlanInfeasible("edge completion would lower the degree");
      vertices = checked_mul(vertices, width, "vertex count");
      degree = degree_after(h);
      e.steps.push_back(DiagonalStep{i, h + 1, width, vertices, degree});
    };
    std::size_t i = 0;
    while (prev != 0) {
      ++i;
      long double thr = i == 1 ? static_cast<long double>(table.degrees[k])
                               : static_cast<long double>(plan.m[prev]) * plan.m[prev] *
                                     std::pow(static_cast<long double>(table.degrees[prev]), 2.0L * plan.m[prev]);
      std::size_t h = first_above(thr);
      if (h >= prev) throw PlanInfeasible("the sequence h_i is not strictly decreasing");
      push(i, h);
      prev = h;
    }
    push(i + 1, 0);
    e.final_vertices = vertices;
    e.final_degree = degree;
    plan.entries.push_back(std::move(e));
  }
  return plan;
}

std::vector<Multigraph> diagonalize(const std::vector<std::vector<Multigraph>>& families, const std::vector<double>& c,
                                    const std::vector<double>& eps, std::size_t cap) {
  FamilyTable table;
  for (const auto& fam : families) {
    if (fam.empty()) throw UsageError("empty family");
    std::vector<std::size_t> sizes;
    for (const auto& g : fam) {
      if (g.degree() != fam[0].degree()) throw UsageError("family members must share a degree");
      sizes.push_back(g.vertices());
    }
    table.sizes.push_back(std::move(sizes));
    table.degrees.push_back(fam[0].degree());
  }
  DiagonalPlan plan = plan_diagonalization(table, c, eps);
  std::vector<Multigraph> out;
  for (const auto& e : plan.entries) {
    std::size_t k = e.k - 1;
    Multigraph l = families[k][plan.j[k]];
    for (const auto& step : e.steps) {
      std::size_t h = step.h - 1;
      const Multigraph& lh = families[h][plan.j[h]];
      check_ports(step.vertices, step.degree, cap);
      l = cesaro(zigzag(edge_complete(l, step.completion_degree), lh), plan.m[h], cap);
    }
    out.push_back(std::move(l));
  }
  return out;
}

FinishReport finish_degree9(const Multigraph& h) {
  std::size_t d = h.degree();
  if (d < 2) throw UsageError("finishing needs deg(H) >= 2");
  FinishReport r;
  r.cycle_length = d;
  Multigraph c = cycle_with_loops(d);
  r.graph = zigzag(h, c);
  r.gamma_plus_h = spectrum(h).gamma_plus;
  r.gamma_plus_cycle = spectrum(c).gamma_plus;
  double dd = static_cast<double>(d);
  r.cycle_bound = 4.0 * dd * dd;
  r.gamma_plus_out = spectrum(r.graph).gamma_plus;
  r.bound = 16.0 * dd * dd * dd * dd * r.gamma_plus_h;
  r.holds = within(r.gamma_plus_cycle, r.cycle_bound) &&
            within(r.gamma_plus_out, r.gamma_plus_h * r.gamma_plus_cycle * r.gamma_plus_cycle) &&
            within(r.gamma_plus_out, r.bound);
  return r;
}

Multigraph finish_degree3(const Multigraph& h) {
  if (h.degree() < 2) throw UsageError("finishing needs deg(H) >= 2");
  return replacement(zigzag(h, cycle_with_loops(h.degree())), cycle(9));
}

CounterexampleReport counterexample_experiment(const std::vector<std::size_t>& sizes,
                                               const std::vector<std::size_t>& walk_lengths, std::size_t degree,
                                               std::size_t samples, std::uint64_t seed, double p) {
  if (samples == 0) throw UsageError("need at least one sample per size");
  CounterexampleReport rep;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::size_t n = sizes[si];
    std::vector<double> bound(walk_lengths.size(), 0.0);
    double spec = 0.0;
    double plain = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      Rng rng(derive_seed(seed, si * 1000 + s));
      Multigraph g = random_regular(n, degree, rng);
      while (!is_connected(g)) g = random_regular(n, degree, rng);
      spec += spectrum(g, 256).gamma_plus / static_cast<double>(samples);
      plain += frechet_lower_bound(g, p).value / static_cast<double>(samples);
      for (std::size_t ti = 0; ti < walk_lengths.size(); ++ti)
        bound[ti] += frechet_lower_bound_cesaro(g, walk_lengths[ti] + 1, p).value / static_cast<double>(samples);
    }
    for (std::size_t ti = 0; ti < walk_lengths.size(); ++ti) {
      CounterexampleRow row;
      row.n = n;
      row.t = walk_lengths[ti];
      row.frechet_bound = bound[ti];
      row.log_n = std::log(static_cast<double>(n));
      row.graph_frechet_bound = plain;
      row.spectral_gamma_plus = spec;
      rep.rows.push_back(row);
    }
  }
  for (std::size_t t : walk_lengths) {
    std::vector<double> xs, ys;
    for (const auto& r : rep.rows)
      if (r.t == t) {
        xs.push_back(std::pow(std::log1p(r.log_n / static_cast<double>(t)), p));
        ys.push_back(r.frechet_bound);
      }
    CounterexampleFit fit;
    fit.t = t;
    double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / n;
      my += ys[i] / n;
    }
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    fit.slope = sxx > 0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    for (std::size_t i = 1; i < ys.size(); ++i)
      if (ys[i] < ys[i - 1]) fit.monotone = false;
    rep.fits.push_back(fit);
  }
  return rep;
}

}  // namespace nlsg
