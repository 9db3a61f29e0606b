#include "nlsg/codes.hpp"

#include <algorithm>
#include <string>

#include "nlsg/errors.hpp"
#include "nlsg/random.hpp"

namespace nlsg {

namespace {

int top_bit(std::uint64_t x) { return 63 - __builtin_clzll(x); }

std::uint64_t length_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

BinaryCode::BinaryCode(std::size_t length, const std::vector<std::uint64_t>& rows) : n_(length) {
  if (n_ == 0 || n_ > 64) throw UsageError("code length must be in 1..64");
  for (std::uint64_t r : rows) {
    if (r & ~length_mask(n_)) throw UsageError("generator row longer than the code length");
    std::uint64_t x = reduce(r);
    if (x == 0) continue;
    int p = top_bit(x);
    for (auto& y : rows_)
      if ((y >> p) & 1) y ^= x;
    rows_.push_back(x);
    std::sort(rows_.begin(), rows_.end(), std::greater<>());
  }
}

std::uint64_t BinaryCode::reduce(std::uint64_t x) const {
  for (std::uint64_t r : rows_)
    if ((x >> top_bit(r)) & 1) x ^= r;
  return x;
}

std::vector<std::uint64_t> BinaryCode::codewords() const {
  if (dimension() > kMaxEnumeratedDimension) throw TooLarge("code dimension too large to enumerate");
  std::vector<std::uint64_t> out{0};
  for (std::uint64_t r : rows_) {
    std::size_t s = out.size();
    for (std::size_t i = 0; i < s; ++i) out.push_back(out[i] ^ r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BinaryCode dual(const BinaryCode& c) {
  std::size_t n = c.length();
  std::uint64_t pivots = 0;
  for (std::uint64_t r : c.generator()) pivots |= std::uint64_t{1} << top_bit(r);
  // For each free column j the word e_j + sum over rows having bit j of their
  // pivot is orthogonal to every row.
  std::vector<std::uint64_t> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if ((pivots >> j) & 1) continue;
    std::uint64_t w = std::uint64_t{1} << j;
    for (std::uint64_t r : c.generator())
      if ((r >> j) & 1) w |= std::uint64_t{1} << top_bit(r);
    rows.push_back(w);
  }
  return BinaryCode(n, rows);
}

int min_distance(const BinaryCode& c) {
  std::size_t k = c.dimension();
  if (k == 0) return kInfiniteDistance;
  if (k > kMaxEnumeratedDimension) throw TooLarge("dimension " + std::to_string(k) + " too large for exhaustive search");
  int best = kInfiniteDistance;
  std::uint64_t word = 0;
  const auto& g = c.generator();
  // Gray-code walk over all nonzero messages.
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    word ^= g[__builtin_ctzll(i)];
    best = std::min(best, __builtin_popcountll(word));
  }
  return best;
}

GoodCode good_code(std::size_t n, std::uint64_t seed, std::size_t budget) {
  if (n == 0 || n > 64) throw UsageError("code length must be in 1..64");
  std::size_t k = (n + 9) / 10;
  int target = static_cast<int>((n + 9) / 10);
  Rng rng(seed);
  std::uint64_t mask = length_mask(n);
  for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
    std::vector<std::uint64_t> rows(k);
    for (auto& r : rows) r = rng.next() & mask;
    BinaryCode c(n, rows);
    if (c.dimension() != k) continue;
    int d = min_distance(c);
    if (d >= target) return GoodCode{c, d, attempt};
  }
  throw NoCodeFound("no [" + std::to_string(n) + "," + std::to_string(k) + "] code with distance " +
                    std::to_string(target) + " within " + std::to_string(budget) + " samples");
}

CosetPartition cosets(const BinaryCode& c) {
  std::size_t n = c.length();
  if (n > kMaxCosetLength) throw TooLarge("coset enumeration needs n <= " + std::to_string(kMaxCosetLength));
  std::uint64_t size = std::uint64_t{1} << n;
  CosetPartition p;
  p.index.resize(size);
  std::vector<std::uint64_t> rep(size);
  for (std::uint64_t x = 0; x < size; ++x) rep[x] = c.reduce(x);
  for (std::uint64_t x = 0; x < size; ++x)
    if (rep[x] == x) p.representatives.push_back(x);
  // Representatives are ascending, so a word's coset number is its rank.
  for (std::uint64_t x = 0; x < size; ++x) {
    auto it = std::lower_bound(p.representatives.begin(), p.representatives.end(), rep[x]);
    p.index[x] = static_cast<std::uint32_t>(it - p.representatives.begin());
  }
  return p;
}

}  // namespace nlsg
