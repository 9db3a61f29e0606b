#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "nlsg/random.hpp"

namespace nlsg {

// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Symmetric doubly stochastic matrix with rational entries stored over one
// common denominator. Every row of numerators sums to the denominator.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  StochasticMatrix(std::size_t n, std::int64_t denominator, std::vector<std::int64_t> numerators);

  static StochasticMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  std::int64_t denominator() const { return den_; }
  std::int64_t numerator(std::size_t i, std::size_t j) const { return num_[i * n_ + j]; }
  Rational entry(std::size_t i, std::size_t j) const { return Rational::make(numerator(i, j), den_); }
  double value(std::size_t i, std::size_t j) const {
    return static_cast<double>(numerator(i, j)) / static_cast<double>(den_);
  }
  const std::vector<std::int64_t>& numerators() const { return num_; }

  friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> num_;
};

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b);
StochasticMatrix matrix_power(const StochasticMatrix& a, std::size_t t);
bool support_connected(const StochasticMatrix& a);
// Connected and two-colourable with no diagonal mass, i.e. -1 is an eigenvalue.
bool support_bipartite(const StochasticMatrix& a);

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

DenseMatrix to_dense(const StochasticMatrix& a);

struct Port {
  std::uint32_t vertex = 0;
  std::uint32_t port = 0;
  friend bool operator==(const Port&, const Port&) = default;
};

// Regular multigraph given by its rotation map. Slot v*d+p stands for port p
// of vertex v; slots()[s] is the slot it is wired to. A slot wired to itself
// is a self-loop and contributes 1 to the degree.
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(std::size_t vertices, std::size_t degree, std::vector<std::uint32_t> slots);

  static Multigraph from_ports(std::size_t vertices, std::size_t degree, const std::vector<Port>& rotation);

  std::size_t vertices() const { return n_; }
  std::size_t degree() const { return d_; }
  std::size_t ports() const { return n_ * d_; }
  Port rotate(std::size_t v, std::size_t p) const {
    std::uint32_t s = slots_[v * d_ + p];
    return Port{static_cast<std::uint32_t>(s / d_), static_cast<std::uint32_t>(s % d_)};
  }
  std::size_t neighbor(std::size_t v, std::size_t p) const { return slots_[v * d_ + p] / d_; }
  const std::vector<std::uint32_t>& slots() const { return slots_; }

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<std::uint32_t> slots_;
};

// Per-vertex list of (neighbour, number of ports wired to it), sorted.
using NeighbourCounts = std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>;

NeighbourCounts neighbour_counts(const Multigraph& g);
// Canonical rotation realising the given symmetric counts; ports of u are
// handed out in increasing neighbour order and ports toward u itself become
// self-loops.
Multigraph from_neighbour_counts(const NeighbourCounts& counts);

Multigraph from_edge_list(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                          const std::vector<std::size_t>& loops);
StochasticMatrix normalized_adjacency(const Multigraph& g);
Multigraph canonical_form(const Multigraph& g);

// d/2 uniform permutations plus, for odd d, a random involution whose fixed
// points become loops.
Multigraph random_regular(std::size_t n, std::size_t d, Rng& rng);

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();
std::vector<std::uint32_t> bfs_distances(const Multigraph& g, std::size_t source);
bool is_connected(const Multigraph& g);
bool is_bipartite(const Multigraph& g);

}  // namespace nlsg
