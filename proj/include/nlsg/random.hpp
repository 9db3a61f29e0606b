#pragma once

#include <cstdint>
#include <random>

namespace nlsg {

// One step of splitmix64; advances state.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic generator. Only raw engine output is used so streams are the
// same across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1).
  double uniform();
  double normal();
  template <class It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) std::swap(first[i - 1], first[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Seed for the index-th independent stream derived from a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

}  // namespace nlsg
