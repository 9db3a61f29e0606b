#include <cmath>

#include "doctest.h"
#include "graphs.hpp"
#include "nlsg/construction.hpp"
#include "nlsg/cotype.hpp"
#include "nlsg/graph_ops.hpp"
#include "nlsg/poincare.hpp"
#include "nlsg/spectral.hpp"
#include "oracles.hpp"

using namespace nlsg;

namespace {

void check_rotation(const Multigraph& g) {
  const auto& s = g.slots();
  REQUIRE(s.size() == g.vertices() * g.degree());
  for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(s[s[i]] == i);
}

void check_doubly_stochastic(const StochasticMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t row = 0, col = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a.numerator(i, j) >= 0);
      CHECK(a.numerator(i, j) == a.numerator(j, i));
      row += a.numerator(i, j);
      col += a.numerator(j, i);
    }
    CHECK(row == a.denominator());
    CHECK(col == a.denominator());
  }
}

Multigraph permute_ports(const Multigraph& g, Rng& rng) {
  std::size_t d = g.degree();
  std::vector<std::uint32_t> perm(g.ports());
  for (std::size_t v = 0; v < g.vertices(); ++v) {
    std::vector<std::uint32_t> p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(p.begin(), p.end());
    for (std::size_t i = 0; i < d; ++i) perm[v * d + i] = static_cast<std::uint32_t>(v * d + p[i]);
  }
  std::vector<std::uint32_t> slots(g.ports());
  for (std::size_t s = 0; s < g.ports(); ++s) slots[perm[s]] = perm[g.slots()[s]];
  return Multigraph(g.vertices(), d, slots);
}

// 2 <= n1 <= max_n1, G2 on d1 vertices.
std::pair<Multigraph, Multigraph> zigzag_pair(Rng& rng, std::size_t max_n1, std::size_t max_d1, std::size_t max_d2) {
  std::size_t d1 = 1 + rng.below(max_d1);
  std::size_t n1 = 2 + rng.below(max_n1 - 1);
  Multigraph g1 = random_regular(n1, d1, rng);
  Multigraph g2 = random_regular(d1, 1 + rng.below(max_d2), rng);
  return {g1, g2};
}

}  // namespace

TEST_CASE("every operation returns a valid rotation map") {
  Rng rng(101);
  for (int i = 0; i < 60; ++i) {
    auto [g1, g2] = zigzag_pair(rng, 12, 4, 3);
    check_rotation(g1);
    check_rotation(zigzag(g1, g2));
    check_rotation(replacement(g1, g2));
    check_rotation(tensor(g1, g2));
    check_rotation(power(g1, 1 + rng.below(3)));
    check_rotation(cesaro(g1, 1 + rng.below(3)));
    check_rotation(edge_complete(g1, g1.degree() + rng.below(5)));
    check_rotation(canonical_form(g1));
    check_doubly_stochastic(normalized_adjacency(zigzag(g1, g2)));
    check_doubly_stochastic(normalized_adjacency(cesaro(g1, 3)));
  }
}

TEST_CASE("canonical form keeps the adjacency and ignores port labels") {
  Rng rng(102);
  for (int i = 0; i < 40; ++i) {
    Multigraph g = random_regular(2 + rng.below(15), 1 + rng.below(6), rng);
    Multigraph c = canonical_form(g);
    CHECK(normalized_adjacency(c) == normalized_adjacency(g));
    CHECK(canonical_form(c) == c);
    CHECK(canonical_form(permute_ports(g, rng)) == c);
  }
}

TEST_CASE("power and Cesaro graphs realise the matrix operations exactly") {
  Rng rng(103);
  for (int i = 0; i < 30; ++i) {
    Multigraph g = random_regular(2 + rng.below(9), 1 + rng.below(4), rng);
    StochasticMatrix a = normalized_adjacency(g);
    std::size_t t = 1 + rng.below(3);
    CHECK(normalized_adjacency(power(g, t)) == matrix_power(a, t));
    CHECK(normalized_adjacency(cesaro(g, t)) == cesaro_matrix(a, t));
  }
}

TEST_CASE("spectral invariants") {
  Rng rng(104);
  for (int i = 0; i < 40; ++i) {
    Multigraph g = random_regular(2 + rng.below(40), 1 + rng.below(6), rng);
    SpectralReport r = spectrum(g);
    CHECK(r.eigenvalues.front() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 1; k < r.eigenvalues.size(); ++k) CHECK(r.eigenvalues[k] <= r.eigenvalues[k - 1]);
    CHECK(r.lambda_min >= -1.0);
    CHECK(r.gamma <= r.gamma_plus);
    CHECK(std::isinf(r.gamma_plus) == (r.lambda >= 1.0));
  }
}

TEST_CASE("zig-zag spectral bound") {
  Rng rng(105);
  for (int i = 0; i < 100; ++i) {
    auto [g1, g2] = zigzag_pair(rng, 30, 6, 4);
    double lhs = inverse_gap(spectrum(zigzag(g1, g2)).lambda);
    double a = inverse_gap(spectrum(g1).lambda), b = inverse_gap(spectrum(g2).lambda);
    double rhs = a * b * b;
    if (std::isinf(rhs)) continue;
    CHECK(lhs <= rhs * (1 + 1e-9));
  }
}

TEST_CASE("nonlinear sub-multiplicativity on two-point kernels") {
  Rng rng(106);
  KernelSpace k = two_point_kernel();
  std::size_t checked = 0;
  while (checked < 40) {
    std::size_t d1 = 1 + rng.below(3);
    std::size_t n1 = 2 + rng.below(10 / d1 - 1);
    if (n1 * d1 > 10) continue;
    Multigraph g1 = random_regular(n1, d1, rng);
    Multigraph g2 = random_regular(d1, 1 + rng.below(3), rng);
    double prod = gamma_plus_exact(normalized_adjacency(zigzag(g1, g2)), k).value;
    double a = gamma_plus_exact(normalized_adjacency(g1), k).value;
    double b = gamma_plus_exact(normalized_adjacency(g2), k).value;
    double rhs = a * b * b;
    CHECK((std::isinf(rhs) || prod <= rhs * (1 + 1e-9)));
    ++checked;
  }
}

TEST_CASE("gamma never exceeds gamma_plus") {
  Rng rng(107);
  for (int i = 0; i < 40; ++i) {
    StochasticMatrix a = normalized_adjacency(random_regular(2 + rng.below(4), 1 + rng.below(3), rng));
    KernelSpace k = i % 2 ? two_point_kernel() : uniform_kernel(3);
    PoincareEstimate g = gamma_exact(a, k), gp = gamma_plus_exact(a, k);
    CHECK((std::isinf(gp.value) || g.value <= gp.value * (1 + 1e-12)));
  }
}

TEST_CASE("doubling and commuting sandwiches on random matrices") {
  Rng rng(108);
  for (int i = 0; i < 25; ++i) {
    StochasticMatrix a = normalized_adjacency(random_regular(2 + rng.below(3), 1 + rng.below(3), rng));
    CHECK(doubling_check(a, two_point_kernel()).holds);
    CHECK(commute_check(a, 1 + rng.below(3), two_point_kernel()).holds);
  }
}

TEST_CASE("search lower bounds stay below exact and spectral values") {
  Rng rng(109);
  for (int i = 0; i < 20; ++i) {
    Multigraph g = random_regular(3 + rng.below(4), 1 + rng.below(4), rng);
    StochasticMatrix a = normalized_adjacency(g);
    std::vector<std::vector<double>> pts{{rng.normal()}, {rng.normal()}, {rng.normal()}};
    KernelSpace k = metric_power_kernel(pts, 2.0);
    SearchOptions so;
    so.seed = i;
    so.restarts = 4;
    PoincareEstimate s = gamma_plus_search(a, k, so);
    CHECK(s.value <= gamma_plus_exact(a, k).value * (1 + 1e-12));
    CHECK(s.value <= spectrum(a).gamma_plus + 1e-6);
    REQUIRE(s.witness);
    double again = poincare_ratio(a, k, s.witness->f, s.witness->g);
    if (std::isinf(s.value))
      CHECK(std::isinf(again));
    else
      CHECK(again == doctest::Approx(s.value).epsilon(1e-12));
  }
}

TEST_CASE("cotype reports reproduce their minimal constant") {
  for (const auto& s : cotype_sweep(200, 555)) {
    const CotypeReport& r = s.report;
    CHECK(r.minimal_c2 >= 0.0);
    CHECK(r.displacement_holds);
    if (!r.degenerate) CHECK(std::abs(r.minimal_c2 - (r.displacement + r.smoothness) / r.rhs_base) <= 1e-12 * r.minimal_c2);
  }
}

TEST_CASE("finisher degree on random inputs") {
  Rng rng(110);
  for (int i = 0; i < 6; ++i) {
    Multigraph h = fixture::connected_random(4 + rng.below(10), 2 + rng.below(3), 900 + i);
    FinishReport r = finish_degree9(h);
    CHECK(r.graph.degree() == 9);
    CHECK(r.graph.vertices() == h.vertices() * h.degree());
    CHECK(r.gamma_plus_out <= r.bound * (1 + 1e-9));
  }
}
