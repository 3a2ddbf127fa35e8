/* graph.cpp */
#include "feynred/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace feynred {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // returns false if already joined
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

Graph Graph::build(const std::vector<std::pair<int, int>>& edge_pairs) {
  if (edge_pairs.empty()) throw EmptyGraph();
  Graph g;
  std::map<int, int> relabel;
  auto label = [&](int v) {
    auto it = relabel.find(v);
    if (it != relabel.end()) return it->second;
    int next = static_cast<int>(relabel.size()) + 1;
    relabel.emplace(v, next);
    return next;
  };
  int id = 0;
  for (auto [u, v] : edge_pairs) {
    if (u == v) throw TadpoleEdge(u);
    g.edges_.push_back({label(u), label(v), ++id, true});
  }
  g.n_vertices_ = static_cast<int>(relabel.size());
  return g;
}

Graph Graph::from_labeled(const std::vector<std::pair<int, int>>& edge_pairs) {
  if (edge_pairs.empty()) throw EmptyGraph();
  Graph g;
  int vmax = 0;
  int id = 0;
  for (auto [u, v] : edge_pairs) {
    if (u == v) throw TadpoleEdge(u);
    if (u < 1 || v < 1) throw std::runtime_error("vertex labels must be >= 1");
    vmax = std::max({vmax, u, v});
    g.edges_.push_back({u, v, ++id, true});
  }
  std::vector<bool> seen(vmax + 1, false);
  for (const auto& e : g.edges_) seen[e.source] = seen[e.target] = true;
  for (int v = 1; v <= vmax; ++v)
    if (!seen[v]) throw std::runtime_error("vertex labels not contiguous");
  g.n_vertices_ = vmax;
  return g;
}

int Graph::n_edges_active() const {
  int n = 0;
  for (const auto& e : edges_)
    if (e.active) ++n;
  return n;
}

std::vector<int> Graph::active_edge_ids() const {
  std::vector<int> ids;
  for (const auto& e : edges_)
    if (e.active) ids.push_back(e.id);
  return ids;
}

const Edge& Graph::edge(int id) const {
  if (id < 1 || id > static_cast<int>(edges_.size())) throw InactiveEdge(id);
  return edges_[id - 1];
}

bool Graph::is_active(int id) const {
  return id >= 1 && id <= static_cast<int>(edges_.size()) && edges_[id - 1].active;
}

int Graph::n_components() const {
  UnionFind uf(n_vertices_ + 1);
  int c = n_vertices_;
  for (const auto& e : edges_)
    if (e.active && uf.unite(e.source, e.target)) --c;
  return c;
}

bool Graph::connected() const { return n_components() == 1; }

int Graph::loop_number() const {
  return n_edges_active() - n_vertices_ + n_components();
}

int Graph::degree(int vertex) const {
  int d = 0;
  for (const auto& e : edges_)
    if (e.active && (e.source == vertex || e.target == vertex)) ++d;
  return d;
}

std::vector<int> Graph::incident_edges(int vertex) const {
  std::vector<int> ids;
  for (const auto& e : edges_)
    if (e.active && (e.source == vertex || e.target == vertex)) ids.push_back(e.id);
  return ids;
}

Graph Graph::minor(const std::vector<int>& del,
                   const std::vector<int>& contract) const {
  for (int id : del)
    if (!is_active(id)) throw InactiveEdge(id);
  for (int id : contract)
    if (!is_active(id)) throw InactiveEdge(id);
  for (int id : del)
    for (int jd : contract)
      if (id == jd) throw std::runtime_error("edge both deleted and contracted");

  Graph g = *this;
  for (int id : del) g.edges_[id - 1].active = false;

  // contraction: merge endpoint classes; an edge whose endpoints are already
  // merged is a loop by the time we reach it and is simply removed
  UnionFind uf(n_vertices_ + 1);
  for (int id : contract) {
    const Edge& e = g.edges_[id - 1];
    if (uf.find(e.source) == uf.find(e.target)) {
      g.contracted_loops_.push_back(id);
      g.edges_[id - 1].active = false;
    } else {
      uf.unite(e.source, e.target);
      g.edges_[id - 1].active = false;
    }
  }

  // relabel merged classes to 1..V' preserving smallest-original order
  std::map<int, int> relabel;
  for (int v = 1; v <= n_vertices_; ++v) {
    int r = uf.find(v);
    if (!relabel.count(r)) relabel[r] = 0;
  }
  {
    int next = 0;
    for (auto& kv : relabel) kv.second = ++next;
  }
  for (auto& e : g.edges_) {
    if (!e.active) continue;
    e.source = relabel[uf.find(e.source)];
    e.target = relabel[uf.find(e.target)];
    if (e.source == e.target) {
      // parallel partner of a contracted edge; drop and report
      g.factored_tadpoles_.push_back(e.id);
      e.active = false;
    }
  }
  g.n_vertices_ = static_cast<int>(relabel.size());
  std::sort(g.factored_tadpoles_.begin(), g.factored_tadpoles_.end());
  std::sort(g.contracted_loops_.begin(), g.contracted_loops_.end());
  return g;
}

std::vector<std::vector<int>> Graph::spanning_trees() const {
  if (!connected()) throw Disconnected();
  auto ids = active_edge_ids();
  int n = static_cast<int>(ids.size());
  int k = n_vertices_ - 1;
  std::vector<std::vector<int>> trees;
  if (k == 0) {
    trees.push_back({});
    return trees;
  }
  if (k > n) return trees;
  std::vector<int> choose(k);
  std::iota(choose.begin(), choose.end(), 0);
  while (true) {
    UnionFind uf(n_vertices_ + 1);
    bool acyclic = true;
    for (int c : choose) {
      const Edge& e = edge(ids[c]);
      if (!uf.unite(e.source, e.target)) {
        acyclic = false;
        break;
      }
    }
    if (acyclic) {
      std::vector<int> t;
      t.reserve(k);
      for (int c : choose) t.push_back(ids[c]);
      trees.push_back(std::move(t));
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && choose[i] == n - k + i) --i;
    if (i < 0) break;
    ++choose[i];
    for (int j = i + 1; j < k; ++j) choose[j] = choose[j - 1] + 1;
  }
  return trees;
}

std::uint64_t Graph::spanning_tree_count() const {
  return static_cast<std::uint64_t>(spanning_trees().size());
}

std::vector<std::vector<int>> Graph::incidence_matrix() const {
  if (!connected()) throw Disconnected();
  std::vector<std::vector<int>> m;
  for (const auto& e : edges_) {
    if (!e.active) continue;
    std::vector<int> row(n_vertices_ - 1, 0);
    if (e.source < n_vertices_) row[e.source - 1] = 1;
    if (e.target < n_vertices_) row[e.target - 1] = -1;
    m.push_back(std::move(row));
  }
  return m;
}

Graph Graph::catalog(const std::string& name, int n) {
  if (name == "wheel") {
    if (n < 3) throw std::runtime_error("wheel needs n >= 3");
    // rim vertices 1..n, hub n+1; spokes get ids 1..n, rim edges n+1..2n
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i) pairs.emplace_back(n + 1, i);
    for (int i = 1; i <= n; ++i) pairs.emplace_back(i, i % n + 1);
    return from_labeled(pairs);
  }
  if (name == "cycle") {
    if (n < 2) throw std::runtime_error("cycle needs n >= 2");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i) pairs.emplace_back(i, i % n + 1);
    return from_labeled(pairs);
  }
  if (name == "g8") {
    static const std::vector<std::pair<int, int>> pairs = {
        {3, 4}, {1, 4}, {1, 3}, {1, 2}, {2, 7}, {2, 5}, {5, 8}, {7, 8},
        {8, 9}, {5, 9}, {4, 9}, {4, 7}, {3, 5}, {3, 6}, {6, 7}, {6, 9}};
    return from_labeled(pairs);
  }
  throw UnknownName(name);
}

}  // namespace feynred
