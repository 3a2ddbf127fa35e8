/* randgraph.hpp
 *
 * Deterministic random multigraphs for the property suites.
 */
#pragma once

#include <cstdint>

#include "feynred/graph.hpp"

namespace feynred {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// connected multigraph without tadpoles, n_edges edges
Graph random_connected_multigraph(Rng& rng, int n_edges);

// additionally 2-edge-connected (no bridges)
Graph random_bridgeless_multigraph(Rng& rng, int n_edges);

bool has_bridge(const Graph& g);

}  // namespace feynred
