#pragma once

#include <cstdint>

#include "nlsg/multigraph.hpp"
#include "nlsg/random.hpp"

namespace fixture {

inline nlsg::Multigraph triangle() { return nlsg::from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}}, {}); }
inline nlsg::Multigraph double_edge() { return nlsg::from_edge_list(2, {{0, 1}, {0, 1}}, {}); }
inline nlsg::Multigraph single_loop() { return nlsg::from_edge_list(1, {}, {0}); }

// Connected random regular graph; resamples with derived seeds.
inline nlsg::Multigraph connected_random(std::size_t n, std::size_t d, std::uint64_t seed) {
  for (std::uint64_t i = 0;; ++i) {
    nlsg::Rng rng(nlsg::derive_seed(seed, i));
    nlsg::Multigraph g = nlsg::random_regular(n, d, rng);
    if (nlsg::is_connected(g)) return g;
  }
}

}  // namespace fixture
