#include <algorithm>

#include "doctest.h"
#include "graphs.hpp"
#include "nlsg/errors.hpp"
#include "nlsg/multigraph.hpp"
#include "oracles.hpp"

using namespace nlsg;

TEST_CASE("rational reduces and normalises the sign") {
  CHECK(Rational::make(6, -8) == Rational{-3, 4});
  CHECK(Rational::make(0, 5) == Rational{0, 1});
  CHECK_THROWS_AS(Rational::make(1, 0), Error);
}

TEST_CASE("triangle from an edge list") {
  Multigraph g = fixture::triangle();
  CHECK(g.vertices() == 3);
  CHECK(g.degree() == 2);
  for (std::size_t v = 0; v < 3; ++v)
    for (std::size_t p = 0; p < 2; ++p) {
      Port q = g.rotate(v, p);
      CHECK(q.vertex != v);
      CHECK(g.rotate(q.vertex, q.port) == Port{static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(p)});
    }
}

TEST_CASE("a single loop is a fixed point of the rotation") {
  Multigraph g = fixture::single_loop();
  CHECK(g.rotate(0, 0) == Port{0, 0});
  StochasticMatrix a = normalized_adjacency(g);
  CHECK(a.size() == 1);
  CHECK(a.entry(0, 0) == Rational{1, 1});
}

TEST_CASE("edge plus a loop at each end gives rows of halves") {
  Multigraph g = from_edge_list(2, {{0, 1}}, {0, 1});
  StochasticMatrix a = normalized_adjacency(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(a.entry(i, j) == Rational{1, 2});
}

TEST_CASE("normalized adjacency of small graphs") {
  StochasticMatrix t = normalized_adjacency(fixture::triangle());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(t.entry(i, j) == (i == j ? Rational{0, 1} : Rational{1, 2}));
  StochasticMatrix d = normalized_adjacency(fixture::double_edge());
  CHECK(d.entry(0, 0) == Rational{0, 1});
  CHECK(d.entry(0, 1) == Rational{1, 1});
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS_AS(from_edge_list(2, {{0, 0}}, {}), InvalidGraph);
  CHECK_THROWS_AS(from_edge_list(3, {{0, 1}}, {}), NonRegular);
  try {
    from_edge_list(3, {{0, 1}, {1, 2}}, {0, 2, 2});
    FAIL("expected NonRegular");
  } catch (const NonRegular& e) {
    CHECK(e.vertex() == 2);
  }
  CHECK_THROWS_AS(Multigraph(2, 1, {1, 1}), InvalidGraph);
  CHECK_THROWS_AS(Multigraph(2, 1, {0}), InvalidGraph);
  CHECK_THROWS_AS(StochasticMatrix(2, 2, {1, 1, 0, 2}), Error);
  CHECK_THROWS_AS(StochasticMatrix(2, 2, {2, 0, 1, 1}), Error);
}

TEST_CASE("canonical form is idempotent and keeps the adjacency") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    Multigraph g = random_regular(3 + rng.below(12), 1 + rng.below(5), rng);
    Multigraph c = canonical_form(g);
    CHECK(canonical_form(c) == c);
    CHECK(normalized_adjacency(c) == normalized_adjacency(g));
  }
}

TEST_CASE("random regular graphs are regular and reproducible") {
  for (std::size_t d = 1; d <= 6; ++d) {
    Rng a(42), b(42);
    Multigraph g = random_regular(17, d, a);
    CHECK(g == random_regular(17, d, b));
    CHECK(g.degree() == d);
    auto adj = oracle::adjacency(g);
    for (Eigen::Index i = 0; i < adj.rows(); ++i) CHECK(adj.row(i).sum() == doctest::Approx(double(d)));
    CHECK(adj.isApprox(adj.transpose()));
  }
}

TEST_CASE("matrix products agree with dense arithmetic") {
  Multigraph g = fixture::connected_random(9, 3, 7);
  StochasticMatrix a = normalized_adjacency(g);
  Eigen::MatrixXd d = oracle::dense(a);
  CHECK((oracle::dense(multiply(a, a)) - d * d).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::MatrixXd p = d * d * d * d * d;
  CHECK((oracle::dense(matrix_power(a, 5)) - p).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(matrix_power(a, 0) == StochasticMatrix::identity(9));
}

TEST_CASE("support connectivity and bipartiteness") {
  CHECK(support_connected(normalized_adjacency(fixture::triangle())));
  CHECK_FALSE(support_bipartite(normalized_adjacency(fixture::triangle())));
  CHECK(support_bipartite(normalized_adjacency(fixture::double_edge())));
  CHECK_FALSE(support_connected(StochasticMatrix::identity(2)));
  CHECK(is_bipartite(fixture::double_edge()));
  CHECK_FALSE(is_connected(from_edge_list(4, {{0, 1}, {2, 3}}, {})));
}

TEST_CASE("bfs distances match Floyd-Warshall") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    Multigraph g = random_regular(20, 2 + seed % 2, rng);
    auto fw = oracle::floyd_warshall(g);
    for (std::size_t s = 0; s < g.vertices(); ++s) {
      auto d = bfs_distances(g, s);
      for (std::size_t v = 0; v < g.vertices(); ++v) {
        if (d[v] == kUnreachable)
          CHECK(std::isinf(fw[s][v]));
        else
          CHECK(double(d[v]) == fw[s][v]);
      }
    }
  }
}
