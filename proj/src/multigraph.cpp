#include "nlsg/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nlsg/errors.hpp"

namespace nlsg {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("rational arithmetic overflow");
  return r;
}

// Two-colouring of the support of a symmetric relation; returns false on an
// odd cycle or a loop. Assumes the relation is connected from vertex 0.
template <class Neighbours>
bool two_colourable(std::size_t n, Neighbours&& neighbours) {
  std::vector<int> colour(n, -1);
  std::vector<std::size_t> stack{0};
  colour[0] = 0;
  bool ok = true;
  while (!stack.empty() && ok) {
    std::size_t u = stack.back();
    stack.pop_back();
    neighbours(u, [&](std::size_t v) {
      if (colour[v] < 0) {
        colour[v] = 1 - colour[u];
        stack.push_back(v);
      } else if (colour[v] == colour[u]) {
        ok = false;
      }
    });
  }
  return ok;
}

template <class Neighbours>
bool connected(std::size_t n, Neighbours&& neighbours) {
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    neighbours(u, [&](std::size_t v) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    });
  }
  return count == n;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return Rational{num / g, den / g};
}

StochasticMatrix::StochasticMatrix(std::size_t n, std::int64_t denominator, std::vector<std::int64_t> numerators)
    : n_(n), den_(denominator), num_(std::move(numerators)) {
  if (n_ == 0) throw IncompatibleSizes("empty matrix");
  if (num_.size() != n_ * n_) throw IncompatibleSizes("numerator array has the wrong size");
  if (den_ <= 0) throw Error("denominator must be positive");
  std::int64_t g = den_;
  for (std::size_t i = 0; i < n_; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      std::int64_t x = num_[i * n_ + j];
      if (x < 0) throw Error("negative entry");
      if (x != num_[j * n_ + i]) throw Error("matrix is not symmetric");
      row += x;
      g = std::gcd(g, x);
    }
    if (row != den_) throw Error("row " + std::to_string(i) + " does not sum to one");
  }
  if (g > 1) {
    den_ /= g;
    for (auto& x : num_) x /= g;
  }
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  std::vector<std::int64_t> num(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) num[i * n + i] = 1;
  return StochasticMatrix(n, 1, std::move(num));
}

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.size() != b.size()) throw IncompatibleSizes("matrix sizes differ");
  std::size_t n = a.size();
  // Every product entry is bounded by the product denominator, so checking
  // that one value is enough.
  std::int64_t den = checked_mul(a.denominator(), b.denominator());
  std::vector<std::int64_t> num(n * n, 0);
  const auto& an = a.numerators();
  const auto& bn = b.numerators();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t x = an[i * n + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) num[i * n + j] += x * bn[k * n + j];
    }
  }
  return StochasticMatrix(n, den, std::move(num));
}

StochasticMatrix matrix_power(const StochasticMatrix& a, std::size_t t) {
  StochasticMatrix result = StochasticMatrix::identity(a.size());
  StochasticMatrix base = a;
  while (t > 0) {
    if (t & 1) result = multiply(result, base);
    t >>= 1;
    if (t > 0) base = multiply(base, base);
  }
  return result;
}

bool support_connected(const StochasticMatrix& a) {
  std::size_t n = a.size();
  return connected(n, [&](std::size_t u, auto&& visit) {
    for (std::size_t v = 0; v < n; ++v)
      if (a.numerator(u, v) != 0) visit(v);
  });
}

bool support_bipartite(const StochasticMatrix& a) {
  std::size_t n = a.size();
  if (!support_connected(a)) return false;
  return two_colourable(n, [&](std::size_t u, auto&& visit) {
    for (std::size_t v = 0; v < n; ++v)
      if (a.numerator(u, v) != 0) visit(v);
  });
}

DenseMatrix to_dense(const StochasticMatrix& a) {
  DenseMatrix m(a.size(), a.size());
  double den = static_cast<double>(a.denominator());
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = static_cast<double>(a.numerators()[i]) / den;
  return m;
}

Multigraph::Multigraph(std::size_t vertices, std::size_t degree, std::vector<std::uint32_t> slots)
    : n_(vertices), d_(degree), slots_(std::move(slots)) {
  if (n_ == 0 || d_ == 0) throw InvalidGraph("a multigraph needs at least one vertex and degree at least one");
  if (n_ * d_ > std::numeric_limits<std::uint32_t>::max()) throw TooLarge("too many ports");
  if (slots_.size() != n_ * d_) throw InvalidGraph("rotation map has the wrong number of ports");
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    std::uint32_t t = slots_[s];
    if (t >= slots_.size() || slots_[t] != s) {
      throw InvalidGraph("rotation map is not an involution at vertex " + std::to_string(s / d_) + " port " +
                         std::to_string(s % d_));
    }
  }
}

Multigraph Multigraph::from_ports(std::size_t vertices, std::size_t degree, const std::vector<Port>& rotation) {
  std::vector<std::uint32_t> slots(rotation.size());
  for (std::size_t s = 0; s < rotation.size(); ++s) {
    if (rotation[s].vertex >= vertices || rotation[s].port >= degree) throw InvalidGraph("port out of range");
    slots[s] = static_cast<std::uint32_t>(rotation[s].vertex * degree + rotation[s].port);
  }
  return Multigraph(vertices, degree, std::move(slots));
}

NeighbourCounts neighbour_counts(const Multigraph& g) {
  NeighbourCounts out(g.vertices());
  std::vector<std::uint32_t> nb(g.degree());
  for (std::size_t v = 0; v < g.vertices(); ++v) {
    for (std::size_t p = 0; p < g.degree(); ++p) nb[p] = static_cast<std::uint32_t>(g.neighbor(v, p));
    std::sort(nb.begin(), nb.end());
    for (std::size_t i = 0; i < nb.size();) {
      std::size_t j = i;
      while (j < nb.size() && nb[j] == nb[i]) ++j;
      out[v].emplace_back(nb[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
  }
  return out;
}

Multigraph from_neighbour_counts(const NeighbourCounts& counts) {
  std::size_t n = counts.size();
  if (n == 0) throw InvalidGraph("no vertices");
  std::size_t d = 0;
  for (const auto& [v, c] : counts[0]) d += c;
  std::vector<std::vector<std::uint32_t>> start(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < counts[u].size(); ++i) {
      if (counts[u][i].first >= n) throw InvalidGraph("neighbour out of range");
      if (i > 0 && counts[u][i].first <= counts[u][i - 1].first) throw InvalidGraph("neighbour list not sorted");
      start[u].push_back(static_cast<std::uint32_t>(sum));
      sum += counts[u][i].second;
    }
    if (sum != d) throw NonRegular(u);
  }
  auto find = [&](std::size_t u, std::uint32_t v) -> std::ptrdiff_t {
    const auto& list = counts[u];
    auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(v, std::uint32_t{0}));
    if (it == list.end() || it->first != v) return -1;
    return it - list.begin();
  };
  std::vector<std::uint32_t> slots(n * d);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < counts[u].size(); ++i) {
      auto [v, c] = counts[u][i];
      std::size_t base_u = u * d + start[u][i];
      if (v == u) {
        for (std::size_t k = 0; k < c; ++k) slots[base_u + k] = static_cast<std::uint32_t>(base_u + k);
        continue;
      }
      std::ptrdiff_t j = find(v, static_cast<std::uint32_t>(u));
      if (j < 0 || counts[v][j].second != c) throw InvalidGraph("neighbour counts are not symmetric");
      std::size_t base_v = v * d + start[v][j];
      for (std::size_t k = 0; k < c; ++k) slots[base_u + k] = static_cast<std::uint32_t>(base_v + k);
    }
  }
  return Multigraph(n, d, std::move(slots));
}

Multigraph from_edge_list(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                          const std::vector<std::size_t>& loops) {
  if (n == 0) throw InvalidGraph("no vertices");
  std::vector<std::vector<std::uint32_t>> nb(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidGraph("edge endpoint out of range");
    if (u == v) throw InvalidGraph("edge {" + std::to_string(u) + "," + std::to_string(u) + "}; list self-loops as loops");
    nb[u].push_back(static_cast<std::uint32_t>(v));
    nb[v].push_back(static_cast<std::uint32_t>(u));
  }
  for (auto v : loops) {
    if (v >= n) throw InvalidGraph("loop vertex out of range");
    nb[v].push_back(static_cast<std::uint32_t>(v));
  }
  NeighbourCounts counts(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (nb[u].size() != nb[0].size()) throw NonRegular(u);
    std::sort(nb[u].begin(), nb[u].end());
    for (std::size_t i = 0; i < nb[u].size();) {
      std::size_t j = i;
      while (j < nb[u].size() && nb[u][j] == nb[u][i]) ++j;
      counts[u].emplace_back(nb[u][i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
  }
  return from_neighbour_counts(counts);
}

StochasticMatrix normalized_adjacency(const Multigraph& g) {
  std::size_t n = g.vertices();
  std::vector<std::int64_t> num(n * n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t p = 0; p < g.degree(); ++p) ++num[v * n + g.neighbor(v, p)];
  return StochasticMatrix(n, static_cast<std::int64_t>(g.degree()), std::move(num));
}

Multigraph canonical_form(const Multigraph& g) { return from_neighbour_counts(neighbour_counts(g)); }

Multigraph random_regular(std::size_t n, std::size_t d, Rng& rng) {
  if (n == 0 || d == 0) throw InvalidGraph("random_regular needs n >= 1 and d >= 1");
  std::vector<std::uint32_t> slots(n * d);
  std::vector<std::uint32_t> perm(n);
  for (std::size_t k = 0; k + 1 < d; k += 2) {
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(perm.begin(), perm.end());
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t u = perm[v];
      slots[v * d + k] = static_cast<std::uint32_t>(u * d + k + 1);
      slots[u * d + k + 1] = static_cast<std::uint32_t>(v * d + k);
    }
  }
  if (d % 2 == 1) {
    std::size_t p = d - 1;
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(perm.begin(), perm.end());
    // Pair consecutive entries of a random order; each pair is a matching
    // edge with probability one half, otherwise both ends get loops.
    for (std::size_t i = 0; i < n; i += 2) {
      std::size_t a = perm[i];
      if (i + 1 == n) {
        slots[a * d + p] = static_cast<std::uint32_t>(a * d + p);
        break;
      }
      std::size_t b = perm[i + 1];
      if (rng.below(2) == 0) {
        slots[a * d + p] = static_cast<std::uint32_t>(b * d + p);
        slots[b * d + p] = static_cast<std::uint32_t>(a * d + p);
      } else {
        slots[a * d + p] = static_cast<std::uint32_t>(a * d + p);
        slots[b * d + p] = static_cast<std::uint32_t>(b * d + p);
      }
    }
  }
  return Multigraph(n, d, std::move(slots));
}

std::vector<std::uint32_t> bfs_distances(const Multigraph& g, std::size_t source) {
  std::vector<std::uint32_t> dist(g.vertices(), kUnreachable);
  std::vector<std::uint32_t> queue;
  queue.reserve(g.vertices());
  dist[source] = 0;
  queue.push_back(static_cast<std::uint32_t>(source));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t u = queue[head];
    for (std::size_t p = 0; p < g.degree(); ++p) {
      std::size_t v = g.neighbor(u, p);
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(static_cast<std::uint32_t>(v));
      }
    }
  }
  return dist;
}

bool is_connected(const Multigraph& g) {
  return connected(g.vertices(), [&](std::size_t u, auto&& visit) {
    for (std::size_t p = 0; p < g.degree(); ++p) visit(g.neighbor(u, p));
  });
}

bool is_bipartite(const Multigraph& g) {
  if (!is_connected(g)) return false;
  return two_colourable(g.vertices(), [&](std::size_t u, auto&& visit) {
    for (std::size_t p = 0; p < g.degree(); ++p) visit(g.neighbor(u, p));
  });
}

}  // namespace nlsg
