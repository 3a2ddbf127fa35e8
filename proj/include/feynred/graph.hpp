/* graph.hpp
 *
 * Labeled multigraphs with oriented edges and stable edge ids.  Minors keep
 * the original id space: deleted/contracted ids go inactive, never renumber.
 * Tadpoles created by contracting one edge of a parallel pair are removed
 * and reported so callers can restore the factored edge variables.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace feynred {

struct TadpoleEdge : std::runtime_error {
  explicit TadpoleEdge(int v)
      : std::runtime_error("tadpole edge at vertex " + std::to_string(v)) {}
};
struct EmptyGraph : std::runtime_error {
  EmptyGraph() : std::runtime_error("graph has no edges") {}
};
struct InactiveEdge : std::runtime_error {
  explicit InactiveEdge(int id)
      : std::runtime_error("edge id not active: " + std::to_string(id)) {}
};
struct Disconnected : std::runtime_error {
  Disconnected() : std::runtime_error("graph is not connected") {}
};
struct UnknownName : std::runtime_error {
  explicit UnknownName(const std::string& n)
      : std::runtime_error("unknown catalog name: " + n) {}
};

struct Edge {
  int source = 0;
  int target = 0;
  int id = 0;
  bool active = true;
};

using EdgeOrdering = std::vector<int>;  // distinct active edge ids, elimination order

class Graph {
 public:
  // Pairs are 1-based vertex labels; vertices are relabeled to 1..V in
  // first-appearance order and edges numbered 1..N in input order.
  static Graph build(const std::vector<std::pair<int, int>>& edge_pairs);
  // Same but labels must already be contiguous 1..V and are kept as given.
  static Graph from_labeled(const std::vector<std::pair<int, int>>& edge_pairs);

  int n_vertices() const { return n_vertices_; }
  int n_edges_total() const { return static_cast<int>(edges_.size()); }
  int n_edges_active() const;
  std::vector<int> active_edge_ids() const;
  const Edge& edge(int id) const;
  const std::vector<Edge>& all_edges() const { return edges_; }
  bool is_active(int id) const;

  // ids of parallel-pair tadpoles dropped by contraction; their variables
  // multiply every monomial of this graph's polynomial
  const std::vector<int>& factored_tadpoles() const { return factored_tadpoles_; }
  // contracted edges that were already tadpoles (removed, no variable factor)
  const std::vector<int>& contracted_loops() const { return contracted_loops_; }

  bool connected() const;
  int n_components() const;
  // loop number h = N_active - V + C, recomputed on every call
  int loop_number() const;
  int degree(int vertex) const;
  std::vector<int> incident_edges(int vertex) const;

  Graph minor(const std::vector<int>& del, const std::vector<int>& contract) const;

  // every active edge set of size V-1 that is a spanning tree
  std::vector<std::vector<int>> spanning_trees() const;
  std::uint64_t spanning_tree_count() const;

  // signed incidence: one row per active edge (ascending id), one column per
  // vertex 1..V-1; the highest-numbered vertex's column is deleted.
  // entry +1 when the vertex is the edge's source, -1 when its target.
  std::vector<std::vector<int>> incidence_matrix() const;

  // wheel | cycle | g8
  static Graph catalog(const std::string& name, int n = 0);

 private:
  int n_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> factored_tadpoles_;
  std::vector<int> contracted_loops_;
};

}  // namespace feynred
