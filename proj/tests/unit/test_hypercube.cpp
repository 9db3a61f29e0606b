#include <cmath>

#include "doctest.h"
#include "nlsg/errors.hpp"
#include "nlsg/hypercube.hpp"
#include "nlsg/random.hpp"
#include "oracles.hpp"

using namespace nlsg;

namespace {

CubeFunction random_function(std::size_t n, std::size_t k, Rng& rng) {
  CubeFunction f(n, k);
  for (auto& v : f.values) v = rng.normal();
  return f;
}

CubeFunction walsh_function(std::size_t n, std::uint64_t a) {
  CubeFunction f(n, 1);
  for (std::uint64_t x = 0; x < f.size(); ++x) f.at(x)[0] = walsh(a, x);
  return f;
}

double max_diff(const CubeFunction& a, const CubeFunction& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST_CASE("transform of Walsh functions and constants") {
  for (std::uint64_t b : {0u, 1u, 5u, 12u, 15u}) {
    CubeFunction fh = wht(walsh_function(4, b));
    for (std::uint64_t a = 0; a < 16; ++a) CHECK(fh.at(a)[0] == doctest::Approx(a == b ? 1.0 : 0.0));
  }
  CubeFunction c(5, 2);
  for (std::uint64_t x = 0; x < c.size(); ++x) c.at(x)[0] = 3.0, c.at(x)[1] = -2.0;
  CubeFunction ch = wht(c);
  CHECK(ch.at(0)[0] == 3.0);
  CHECK(ch.at(0)[1] == -2.0);
  for (std::uint64_t a = 1; a < ch.size(); ++a) CHECK(ch.at(a)[0] == 0.0);
}

TEST_CASE("fast transform matches the definition and inverts") {
  Rng rng(1);
  for (std::size_t n = 1; n <= 8; ++n) {
    CubeFunction f = random_function(n, 2, rng);
    CHECK(max_diff(wht(f), oracle::wht(f)) < 1e-12);
    CHECK(max_diff(inverse_wht(wht(f)), f) < 1e-12);
    // Parseval under the expectation normalisation.
    CubeFunction fh = wht(f);
    double s = 0;
    for (double v : fh.values) s += v * v;
    CHECK(l2_norm(f) * l2_norm(f) == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK_THROWS_AS(CubeFunction(21, 1), TooLarge);
}

TEST_CASE("Laplacian") {
  for (std::uint64_t a : {0u, 3u, 6u, 7u}) {
    CubeFunction w = walsh_function(3, a);
    CubeFunction lw = laplacian(w);
    double weight = std::popcount(a);
    for (std::uint64_t x = 0; x < 8; ++x) CHECK(lw.at(x)[0] == doctest::Approx(weight * w.at(x)[0]));
  }
  Rng rng(2);
  CubeFunction f = random_function(6, 3, rng);
  // Spectral evaluation: multiply each coefficient by |A|.
  CubeFunction fh = wht(f);
  for (std::uint64_t a = 0; a < fh.size(); ++a)
    for (std::size_t c = 0; c < 3; ++c) fh.at(a)[c] *= std::popcount(a);
  CHECK(max_diff(laplacian(f), inverse_wht(fh)) < 1e-12);
}

TEST_CASE("heat semigroup") {
  CubeFunction w = walsh_function(4, 0b1011);
  CubeFunction tw = heat(w, 0.3);
  for (std::uint64_t x = 0; x < 16; ++x) CHECK(tw.at(x)[0] == doctest::Approx(std::exp(-0.9) * w.at(x)[0]));
  Rng rng(3);
  CubeFunction f = random_function(5, 2, rng);
  CHECK(max_diff(heat(f, 0.0), f) < 1e-15);
  for (std::size_t n : {3u, 8u, 12u}) {
    CubeFunction g = random_function(n, 1, rng);
    CHECK(max_diff(heat(g, 0.4), heat_spatial(g, 0.4)) < 1e-10);
    if (n <= 8) CHECK(max_diff(heat(g, 0.4), oracle::heat(g, 0.4)) < 1e-10);
  }
  CHECK_THROWS_AS(heat(f, -1.0), UsageError);
}

TEST_CASE("tail projection") {
  Rng rng(4);
  CubeFunction f = random_function(5, 2, rng);
  CHECK(max_diff(tail_project(f, 0), f) < 1e-12);
  CubeFunction zero = tail_project(f, 6);
  for (double v : zero.values) CHECK(std::abs(v) < 1e-12);
  CubeFunction t = tail_project(f, 2);
  CHECK(low_weight_mass(wht(t), 2) < 1e-24);
  CHECK(low_weight_mass(wht(f), 6) == doctest::Approx(l2_norm(f) * l2_norm(f) - std::pow(wht(f).at(0)[0], 2) -
                                                       std::pow(wht(f).at(0)[1], 2)));
}

TEST_CASE("tail space bounds in L2") {
  Rng rng(5);
  for (std::size_t n = 2; n <= 12; n += 2) {
    for (std::size_t m = 1; m <= n; m += 2) {
      CubeFunction f = tail_project(random_function(n, 2, rng), m);
      double norm = l2_norm(f);
      CHECK(l2_norm(laplacian(f)) >= double(m) * norm * (1 - 1e-12));
      for (double t : {0.1, 0.5, 1.0}) CHECK(l2_norm(heat(f, t)) <= std::exp(-t * double(m)) * norm * (1 + 1e-12));
    }
  }
}

TEST_CASE("decay curves") {
  Rng rng(6);
  CubeFunction f = random_function(6, 1, rng);
  auto curve = lp_decay_curve(f, 2, 4.0, {0.0, 0.5, 1.0, 2.0});
  REQUIRE(curve.size() == 4);
  CHECK(curve[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1] + 1e-12);
  CubeFunction c(3, 1);
  for (auto& v : c.values) v = 1.0;
  CHECK(lp_norm(c, 3.0) == doctest::Approx(1.0));
}
