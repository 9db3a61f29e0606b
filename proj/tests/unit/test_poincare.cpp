#include <cmath>

#include "doctest.h"
#include "graphs.hpp"
#include "nlsg/errors.hpp"
#include "nlsg/graph_ops.hpp"
#include "nlsg/poincare.hpp"
#include "nlsg/spectral.hpp"
#include "oracles.hpp"

using namespace nlsg;

namespace {

StochasticMatrix c3() { return normalized_adjacency(fixture::triangle()); }

KernelSpace line3() { return metric_power_kernel({{0}, {1}, {2}}, 2.0); }

}  // namespace

TEST_CASE("metric kernels") {
  KernelSpace two = metric_kernel(2, {0, 1, 1, 0}, 2.0);
  CHECK(two.values == std::vector<double>{0, 1, 1, 0});
  KernelSpace path = metric_kernel(3, {0, 1, 2, 1, 0, 1, 2, 1, 0}, 2.0);
  CHECK(path(0, 2) == 4.0);
  KernelSpace l1 = metric_power_kernel({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 2.0, 1.0);
  CHECK(*std::max_element(l1.values.begin(), l1.values.end()) == doctest::Approx(4.0));
  try {
    metric_kernel(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}, 1.0);
    FAIL("expected TriangleViolation");
  } catch (const TriangleViolation& e) {
    auto [x, y, z] = e.triple();
    CHECK(x == 0);
    CHECK(y == 1);
    CHECK(z == 2);
  }
  CHECK_THROWS_AS(metric_kernel(2, {0, 1, 2, 0}, 1.0), UsageError);
  CHECK(uniform_kernel(3).uniform());
  CHECK_FALSE(line3().uniform());
}

TEST_CASE("log of the max norm") {
  KernelSpace k = log_linf_kernel({{0, 0}, {1, 0}, {2, -1}}, 2.0);
  CHECK(k(1, 1) == 0.0);
  CHECK(k(0, 1) == doctest::Approx(std::log(2.0) * std::log(2.0)));
  KernelSpace k1 = log_linf_kernel({{0, 0}, {2, -1}}, 1.0);
  CHECK(k1(0, 1) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("ratio conventions") {
  StochasticMatrix a = c3();
  KernelSpace k = two_point_kernel();
  CHECK(std::isnan(poincare_ratio(a, k, {0, 0, 0}, {0, 0, 0})));
  StochasticMatrix d = normalized_adjacency(fixture::double_edge());
  CHECK(std::isinf(poincare_ratio(d, k, {0, 1}, {1, 0})));
  CHECK_THROWS_AS(poincare_ratio(a, k, {0, 0}, {0, 0, 0}), IncompatibleSizes);
}

TEST_CASE("exact gamma_plus on small cases") {
  PoincareEstimate d = gamma_plus_exact(normalized_adjacency(fixture::double_edge()), two_point_kernel());
  CHECK(std::isinf(d.value));
  CHECK(d.kind == EstimateKind::Exact);

  PoincareEstimate t = gamma_plus_exact(c3(), two_point_kernel());
  CHECK(t.value == oracle::gamma_plus(c3(), two_point_kernel()));
  REQUIRE(t.witness);
  CHECK(poincare_ratio(c3(), two_point_kernel(), t.witness->f, t.witness->g) == t.value);

  KernelSpace one = make_kernel(1, {0.0}, "1-point");
  CHECK(gamma_plus_exact(c3(), one).value == 1.0);
  CHECK(gamma_exact(c3(), one).value == 1.0);
}

TEST_CASE("exact gamma on small cases") {
  CHECK(std::isinf(gamma_exact(StochasticMatrix::identity(3), two_point_kernel()).value));
  PoincareEstimate g = gamma_exact(c3(), two_point_kernel());
  CHECK(g.value == oracle::gamma(c3(), two_point_kernel()));
  CHECK(g.value <= gamma_plus_exact(c3(), two_point_kernel()).value);
}

TEST_CASE("pruned enumeration agrees with the naive oracle") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Rng rng(seed);
    std::size_t n = 2 + rng.below(4);
    Multigraph gr = random_regular(n, 1 + rng.below(3), rng);
    StochasticMatrix a = normalized_adjacency(gr);
    for (const KernelSpace& k : {two_point_kernel(), uniform_kernel(3), line3()}) {
      if (std::pow(double(k.points), 2.0 * double(n)) > 3e5) continue;
      double gp = gamma_plus_exact(a, k).value;
      double g = gamma_exact(a, k).value;
      auto same = [](double x, double y) { return x == y || std::abs(x - y) <= 1e-12 * std::abs(y); };
      CHECK(same(gp, oracle::gamma_plus(a, k)));
      CHECK(same(g, oracle::gamma(a, k)));
      CHECK(g <= gp);
    }
  }
}

TEST_CASE("worker count does not change the result") {
  Multigraph g = fixture::connected_random(6, 3, 6);
  StochasticMatrix a = normalized_adjacency(g);
  ExactOptions one, four;
  four.workers = 4;
  PoincareEstimate x = gamma_plus_exact(a, line3(), one);
  PoincareEstimate y = gamma_plus_exact(a, line3(), four);
  CHECK(x.value == y.value);
  CHECK(x.witness->f == y.witness->f);
  CHECK(x.witness->g == y.witness->g);
  CHECK(x.evaluated == y.evaluated);
}

TEST_CASE("enumeration cap") {
  ExactOptions opt;
  opt.cap = 1000;
  Multigraph g = fixture::connected_random(10, 3, 1);
  CHECK_THROWS_AS(gamma_plus_exact(normalized_adjacency(g), two_point_kernel(), opt), EnumerationTooLarge);
  CHECK_THROWS_AS(gamma_exact(normalized_adjacency(g), uniform_kernel(3), opt), EnumerationTooLarge);
}

TEST_CASE("local search stays below the exact value") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Multigraph g = fixture::connected_random(5, 2 + seed % 3, seed);
    StochasticMatrix a = normalized_adjacency(g);
    double exact = gamma_plus_exact(a, line3()).value;
    double prev = 0.0;
    for (std::size_t r : {1u, 4u, 16u}) {
      SearchOptions so;
      so.restarts = r;
      so.seed = seed;
      PoincareEstimate s = gamma_plus_search(a, line3(), so);
      CHECK(s.kind == EstimateKind::LowerBound);
      CHECK(s.value <= exact * (1 + 1e-12));
      CHECK(s.value >= prev);
      prev = s.value;
      REQUIRE(s.witness);
      CHECK(poincare_ratio(a, line3(), s.witness->f, s.witness->g) == doctest::Approx(s.value).epsilon(1e-12));
      PoincareEstimate again = gamma_plus_search(a, line3(), so);
      CHECK(again.value == s.value);
    }
    SearchOptions so;
    so.seed = seed;
    CHECK(gamma_search(a, line3(), so).value <= gamma_exact(a, line3()).value * (1 + 1e-12));
  }
}

TEST_CASE("Euclidean search never beats the spectral constant") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({double(i * i) / 7.0});
  KernelSpace k = metric_power_kernel(pts, 2.0);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Multigraph g = fixture::connected_random(12, 3, seed);
    if (is_bipartite(g)) continue;
    SearchOptions so;
    so.seed = seed;
    so.restarts = 8;
    double found = gamma_plus_search(normalized_adjacency(g), k, so).value;
    CHECK(found <= spectrum(g).gamma_plus + 1e-6);
  }
}

TEST_CASE("Frechet bound on a single edge") {
  Multigraph edge = from_edge_list(2, {{0, 1}}, {});
  PoincareEstimate e = frechet_lower_bound(edge, 2.0);
  CHECK(e.kind == EstimateKind::LowerBound);
  CHECK(e.value == doctest::Approx(0.5));
}

TEST_CASE("Frechet bound matches a direct evaluation") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Multigraph g = fixture::connected_random(15 + seed, 3, seed);
    for (double p : {1.0, 2.0}) {
      auto d = oracle::floyd_warshall(g);
      Eigen::MatrixXd a = oracle::dense(normalized_adjacency(g));
      double top = 0, bottom = 0;
      for (std::size_t i = 0; i < g.vertices(); ++i)
        for (std::size_t j = 0; j < g.vertices(); ++j) {
          // The embedding is isometric into the max norm.
          double k = std::pow(std::log1p(d[i][j]), p);
          top += k;
          bottom += a(i, j) * k;
        }
      double expect = top / (double(g.vertices()) * bottom);
      CHECK(frechet_lower_bound(g, p).value == doctest::Approx(expect).epsilon(1e-12));
      for (std::size_t m = 2; m <= 4; ++m)
        CHECK(frechet_lower_bound_cesaro(g, m, p).value ==
              doctest::Approx(frechet_lower_bound(cesaro(g, m), p).value).epsilon(1e-10));
    }
  }
}

TEST_CASE("Frechet embedding through the kernel engine") {
  Multigraph g = fixture::connected_random(8, 3, 3);
  auto d = oracle::floyd_warshall(g);
  std::vector<std::vector<double>> emb(d.begin(), d.end());
  KernelSpace k = log_linf_kernel(emb, 2.0);
  std::vector<std::uint32_t> id;
  for (std::uint32_t v = 0; v < 8; ++v) id.push_back(v);
  double r = poincare_ratio(normalized_adjacency(g), k, id, id);
  CHECK(r == doctest::Approx(frechet_lower_bound(g, 2.0).value).epsilon(1e-12));
  // Edges have length log 2 after the transform.
  for (std::size_t v = 0; v < 8; ++v)
    for (std::size_t p = 0; p < 3; ++p)
      if (g.neighbor(v, p) != v) CHECK(k(v, g.neighbor(v, p)) == doctest::Approx(std::log(2.0) * std::log(2.0)));
}

TEST_CASE("coarse obstruction report") {
  CoarseReport two = coarse_obstruction_report(from_edge_list(2, {{0, 1}}, {}), 2.0, 2.0);
  CHECK(two.distortion_lower_bound >= 1.0);
  Multigraph g = fixture::connected_random(1024, 4, 1024);
  double gp = spectrum(g).gamma_plus;
  CoarseReport r = coarse_obstruction_report(g, gp, 2.0);
  // Median distance from an independent BFS count.
  std::vector<std::size_t> all;
  for (std::size_t s = 0; s < g.vertices(); s += 1) {
    auto d = bfs_distances(g, s);
    all.insert(all.end(), d.begin(), d.end());
  }
  std::sort(all.begin(), all.end());
  CHECK(r.threshold_distance == double(all[all.size() / 2]));
  CHECK(r.threshold_distance >= 0.5 * std::log(1024.0));
  CHECK(r.distortion_lower_bound >= coarse_obstruction_report(g, 2 * gp, 2.0).distortion_lower_bound);
}
