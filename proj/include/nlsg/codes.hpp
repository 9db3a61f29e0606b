#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace nlsg {

inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();
inline constexpr std::size_t kMaxEnumeratedDimension = 24;
inline constexpr std::size_t kMaxCosetLength = 20;

// Linear code over GF(2) of length n <= 64. Coordinate i is bit i of a word.
// The generator is kept in reduced row echelon form with each pivot at the
// highest set bit of its row and rows sorted by decreasing pivot.
class BinaryCode {
 public:
  BinaryCode() = default;
  // Row-reduces the given rows; dependent rows are dropped.
  BinaryCode(std::size_t length, const std::vector<std::uint64_t>& rows);

  std::size_t length() const { return n_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<std::uint64_t>& generator() const { return rows_; }
  // Zero at every pivot position: the smallest word of the coset x + C.
  std::uint64_t reduce(std::uint64_t x) const;
  bool contains(std::uint64_t x) const { return reduce(x) == 0; }
  std::vector<std::uint64_t> codewords() const;

  friend bool operator==(const BinaryCode&, const BinaryCode&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> rows_;
};

BinaryCode dual(const BinaryCode& c);
// kInfiniteDistance for the zero code.
int min_distance(const BinaryCode& c);

struct GoodCode {
  BinaryCode code;
  int distance = 0;
  std::size_t attempts = 0;
};

// Random generator of dimension ceil(n/10) and distance at least ceil(n/10),
// by rejection sampling.
GoodCode good_code(std::size_t n, std::uint64_t seed, std::size_t budget = 1000);

struct CosetPartition {
  std::vector<std::uint64_t> representatives;  // ascending
  std::vector<std::uint32_t> index;            // coset of each word of {0,1}^n
};

CosetPartition cosets(const BinaryCode& c);

}  // namespace nlsg
