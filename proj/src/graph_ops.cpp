#include "nlsg/graph_ops.hpp"

#include <string>
#include <vector>

#include "nlsg/errors.hpp"

namespace nlsg {

namespace {

std::size_t checked_pow(std::size_t base, std::size_t e, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > limit / base) throw DegreeCapExceeded("degree grows past the port cap");
    r *= base;
  }
  return r;
}

void check_cap(std::size_t n, std::size_t degree, std::size_t cap) {
  if (degree > cap / n) {
    throw DegreeCapExceeded(std::to_string(n) + " vertices of degree " + std::to_string(degree) +
                            " exceed the port cap " + std::to_string(cap));
  }
}

// Follows the walk given by the digits of index (most significant first) and
// returns the end slot plus the reversed return-port sequence as an index.
struct WalkEnd {
  std::size_t vertex;
  std::size_t reversed;
};

WalkEnd walk(const Multigraph& g, std::size_t v, std::size_t index, std::size_t length, std::size_t scale) {
  std::size_t d = g.degree();
  std::size_t rev = 0;
  std::size_t place = 1;
  for (std::size_t s = 0; s < length; ++s) {
    scale /= d;
    std::size_t p = (index / scale) % d;
    Port q = g.rotate(v, p);
    v = q.vertex;
    rev += q.port * place;
    place *= d;
  }
  return {v, rev};
}

}  // namespace

Multigraph zigzag(const Multigraph& g1, const Multigraph& g2) {
  if (g2.vertices() != g1.degree()) {
    throw IncompatibleSizes("zigzag needs |V(G2)| = deg(G1); got " + std::to_string(g2.vertices()) + " and " +
                            std::to_string(g1.degree()));
  }
  std::size_t d1 = g1.degree();
  std::size_t d2 = g2.degree();
  std::size_t n = g1.vertices() * d1;
  std::size_t d = d2 * d2;
  std::vector<std::uint32_t> slots(n * d);
  for (std::size_t u = 0; u < g1.vertices(); ++u) {
    for (std::size_t a = 0; a < d1; ++a) {
      for (std::size_t i = 0; i < d2; ++i) {
        Port first = g2.rotate(a, i);
        Port mid = g1.rotate(u, first.vertex);
        for (std::size_t j = 0; j < d2; ++j) {
          Port last = g2.rotate(mid.port, j);
          std::size_t from = (u * d1 + a) * d + i * d2 + j;
          std::size_t to = (mid.vertex * d1 + last.vertex) * d + last.port * d2 + first.port;
          slots[from] = static_cast<std::uint32_t>(to);
        }
      }
    }
  }
  return Multigraph(n, d, std::move(slots));
}

Multigraph replacement(const Multigraph& g1, const Multigraph& g2) {
  if (g2.vertices() != g1.degree()) throw IncompatibleSizes("replacement needs |V(G2)| = deg(G1)");
  std::size_t d1 = g1.degree();
  std::size_t d2 = g2.degree();
  std::size_t d = d2 + 1;
  std::size_t n = g1.vertices() * d1;
  std::vector<std::uint32_t> slots(n * d);
  for (std::size_t u = 0; u < g1.vertices(); ++u) {
    for (std::size_t a = 0; a < d1; ++a) {
      std::size_t base = (u * d1 + a) * d;
      for (std::size_t i = 0; i < d2; ++i) {
        Port q = g2.rotate(a, i);
        slots[base + i] = static_cast<std::uint32_t>((u * d1 + q.vertex) * d + q.port);
      }
      Port q = g1.rotate(u, a);
      slots[base + d2] = static_cast<std::uint32_t>((q.vertex * d1 + q.port) * d + d2);
    }
  }
  return Multigraph(n, d, std::move(slots));
}

Multigraph tensor(const Multigraph& g, const Multigraph& h) {
  std::size_t nh = h.vertices();
  std::size_t dh = h.degree();
  std::size_t n = g.vertices() * nh;
  std::size_t d = g.degree() * dh;
  std::vector<std::uint32_t> slots(n * d);
  for (std::size_t u = 0; u < g.vertices(); ++u)
    for (std::size_t p = 0; p < g.degree(); ++p) {
      Port gp = g.rotate(u, p);
      for (std::size_t a = 0; a < nh; ++a)
        for (std::size_t q = 0; q < dh; ++q) {
          Port hp = h.rotate(a, q);
          slots[(u * nh + a) * d + p * dh + q] =
              static_cast<std::uint32_t>((gp.vertex * nh + hp.vertex) * d + gp.port * dh + hp.port);
        }
    }
  return Multigraph(n, d, std::move(slots));
}

Multigraph power(const Multigraph& g, std::size_t t, std::size_t cap) {
  if (t == 0) throw UsageError("power needs t >= 1");
  std::size_t n = g.vertices();
  std::size_t d = checked_pow(g.degree(), t, cap);
  check_cap(n, d, cap);
  std::vector<std::uint32_t> slots(n * d);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t idx = 0; idx < d; ++idx) {
      WalkEnd e = walk(g, v, idx, t, d);
      slots[v * d + idx] = static_cast<std::uint32_t>(e.vertex * d + e.reversed);
    }
  return Multigraph(n, d, std::move(slots));
}

Multigraph cesaro(const Multigraph& g, std::size_t m, std::size_t cap) {
  if (m == 0) throw UsageError("cesaro needs m >= 1");
  std::size_t n = g.vertices();
  std::size_t d0 = g.degree();
  std::size_t block = checked_pow(d0, m - 1, cap);
  if (block > cap / m) throw DegreeCapExceeded("cesaro degree exceeds the port cap");
  std::size_t d = m * block;
  check_cap(n, d, cap);
  std::vector<std::uint32_t> slots(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t walks = 1;
    for (std::size_t s = 0; s < m; ++s) {
      std::size_t copies = block / walks;
      for (std::size_t w = 0; w < walks; ++w) {
        WalkEnd e = walk(g, v, w, s, walks);
        for (std::size_t c = 0; c < copies; ++c) {
          std::size_t from = s * block + w * copies + c;
          std::size_t to = s * block + e.reversed * copies + c;
          slots[v * d + from] = static_cast<std::uint32_t>(e.vertex * d + to);
        }
      }
      walks *= d0;
    }
  }
  return Multigraph(n, d, std::move(slots));
}

Multigraph edge_complete(const Multigraph& g, std::size_t new_degree) {
  std::size_t d = g.degree();
  if (new_degree < d) {
    throw DegreeTooSmall("edge completion to degree " + std::to_string(new_degree) + " below current degree " +
                         std::to_string(d));
  }
  std::size_t copies = new_degree / d;
  std::size_t loops = new_degree % d;
  std::size_t n = g.vertices();
  std::vector<std::uint32_t> slots(n * new_degree);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t c = 0; c < copies; ++c)
      for (std::size_t p = 0; p < d; ++p) {
        Port q = g.rotate(v, p);
        slots[v * new_degree + c * d + p] = static_cast<std::uint32_t>(q.vertex * new_degree + c * d + q.port);
      }
    for (std::size_t r = 0; r < loops; ++r) {
      std::size_t s = v * new_degree + copies * d + r;
      slots[s] = static_cast<std::uint32_t>(s);
    }
  }
  return Multigraph(n, new_degree, std::move(slots));
}

Multigraph cycle_with_loops(std::size_t m) {
  if (m < 2) throw UsageError("cycle_with_loops needs m >= 2");
  std::vector<std::uint32_t> slots(m * 3);
  for (std::size_t v = 0; v < m; ++v) {
    std::size_t next = (v + 1) % m;
    std::size_t prev = (v + m - 1) % m;
    slots[v * 3 + 0] = static_cast<std::uint32_t>(next * 3 + 1);
    slots[v * 3 + 1] = static_cast<std::uint32_t>(prev * 3 + 0);
    slots[v * 3 + 2] = static_cast<std::uint32_t>(v * 3 + 2);
  }
  return Multigraph(m, 3, std::move(slots));
}

Multigraph cycle(std::size_t m) {
  if (m < 2) throw UsageError("cycle needs m >= 2");
  std::vector<std::uint32_t> slots(m * 2);
  for (std::size_t v = 0; v < m; ++v) {
    slots[v * 2 + 0] = static_cast<std::uint32_t>(((v + 1) % m) * 2 + 1);
    slots[v * 2 + 1] = static_cast<std::uint32_t>(((v + m - 1) % m) * 2 + 0);
  }
  return Multigraph(m, 2, std::move(slots));
}

Multigraph complete_with_loops(std::size_t n) {
  NeighbourCounts counts(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) counts[u].emplace_back(static_cast<std::uint32_t>(v), 1u);
  return from_neighbour_counts(counts);
}

StochasticMatrix double_cover(const StochasticMatrix& a) {
  std::size_t n = a.size();
  std::vector<std::int64_t> num(4 * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      num[i * 2 * n + n + j] = a.numerator(i, j);
      num[(n + i) * 2 * n + j] = a.numerator(i, j);
    }
  return StochasticMatrix(2 * n, a.denominator(), std::move(num));
}

StochasticMatrix cesaro_matrix(const StochasticMatrix& a, std::size_t m) {
  if (m == 0) throw UsageError("cesaro needs m >= 1");
  std::size_t n = a.size();
  std::vector<StochasticMatrix> powers{StochasticMatrix::identity(n)};
  for (std::size_t s = 1; s < m; ++s) powers.push_back(multiply(powers.back(), a));
  std::int64_t lcm = 1;
  for (const auto& p : powers) {
    std::int64_t g = std::gcd(lcm, p.denominator());
    std::int64_t r;
    if (__builtin_mul_overflow(lcm / g, p.denominator(), &r)) throw ArithmeticOverflow("cesaro denominator overflow");
    lcm = r;
  }
  std::int64_t den;
  if (__builtin_mul_overflow(lcm, static_cast<std::int64_t>(m), &den)) {
    throw ArithmeticOverflow("cesaro denominator overflow");
  }
  std::vector<std::int64_t> num(n * n, 0);
  for (const auto& p : powers) {
    std::int64_t scale = lcm / p.denominator();
    for (std::size_t k = 0; k < n * n; ++k) num[k] += p.numerators()[k] * scale;
  }
  return StochasticMatrix(n, den, std::move(num));
}

}  // namespace nlsg
