#pragma once

#include <cstddef>

#include "nlsg/multigraph.hpp"

namespace nlsg {

inline constexpr std::size_t kDefaultPortCap = 1'000'000;

// Vertex (u,a) of the product is u*d1+a; port (i,j) is i*d2+j.
Multigraph zigzag(const Multigraph& g1, const Multigraph& g2);
// Degree d2+1: ports below d2 stay inside the cloud, port d2 crosses clouds.
Multigraph replacement(const Multigraph& g1, const Multigraph& g2);
// Vertex (u,a) is u*nH+a; port (p,q) is p*dH+q.
Multigraph tensor(const Multigraph& g, const Multigraph& h);
// Walks of length t; port (p1..pt) is the base-d number p1 p2 .. pt.
Multigraph power(const Multigraph& g, std::size_t t, std::size_t cap = kDefaultPortCap);
// Degree m*d^(m-1). Ports come in m blocks; block s holds every walk of
// length s repeated d^(m-1-s) times.
Multigraph cesaro(const Multigraph& g, std::size_t m, std::size_t cap = kDefaultPortCap);
// new_degree = l*d + r: every edge repeated l times plus r loops per vertex.
Multigraph edge_complete(const Multigraph& g, std::size_t new_degree);
// m-cycle with a loop at every vertex: port 0 forward, 1 backward, 2 loop.
Multigraph cycle_with_loops(std::size_t m);
// Plain m-cycle (degree 2, no loops).
Multigraph cycle(std::size_t m);
// K_n with one loop per vertex; normalized adjacency J/n.
Multigraph complete_with_loops(std::size_t n);

StochasticMatrix double_cover(const StochasticMatrix& a);
StochasticMatrix cesaro_matrix(const StochasticMatrix& a, std::size_t m);

}  // namespace nlsg
