/* randgraph.cpp */
#include "feynred/randgraph.hpp"

namespace feynred {

Graph random_connected_multigraph(Rng& rng, int n_edges) {
  for (;;) {
    int v = 2 + static_cast<int>(rng.below(std::max(1, n_edges - 1)));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n_edges; ++i) {
      int a = 1 + static_cast<int>(rng.below(v));
      int b = 1 + static_cast<int>(rng.below(v));
      if (a == b) {
        --i;
        continue;
      }
      pairs.emplace_back(a, b);
    }
    bool all_used = true;
    std::vector<bool> used(v + 1, false);
    for (auto [a, b] : pairs) used[a] = used[b] = true;
    for (int i = 1; i <= v; ++i)
      if (!used[i]) all_used = false;
    if (!all_used) continue;
    Graph g = Graph::build(pairs);
    if (g.connected()) return g;
  }
}

bool has_bridge(const Graph& g) {
  for (int id : g.active_edge_ids()) {
    Graph h = g.minor({id}, {});
    if (!h.connected()) return true;
  }
  return false;
}

Graph random_bridgeless_multigraph(Rng& rng, int n_edges) {
  for (;;) {
    Graph g = random_connected_multigraph(rng, n_edges);
    if (!has_bridge(g)) return g;
  }
}

}  // namespace feynred
