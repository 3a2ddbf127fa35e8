#include <doctest.h>

#include <set>

#include "feynred/dodgson.hpp"
#include "feynred/randgraph.hpp"
#include "feynred/textio.hpp"

using namespace feynred;

namespace {

Poly tree_sum_psi(const Graph& g) {
  PolyBuilder pb;
  auto act = g.active_edge_ids();
  for (const auto& tree : g.spanning_trees()) {
    std::set<int> in_tree(tree.begin(), tree.end());
    Monomial m;
    for (int id : act)
      if (!in_tree.count(id)) m.set_exp(id, 1);
    pb.add(m, Int(1));
  }
  return pb.build();
}

// slow oracle: Dodgson minor straight from the literal matrix, carrying the
// same sign normalization (-1)^(#{(i,j) in IxJ : i > j} + C(|I|,2))
Poly dodgson_by_matrix(const Graph& g, const std::vector<int>& I,
                       const std::vector<int>& J, const std::vector<int>& K) {
  auto m = graph_matrix(g);
  auto ids = g.active_edge_ids();
  auto pos = [&](int id) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return static_cast<int>(i);
    throw std::runtime_error("id not active");
  };
  std::set<int> irows, jcols;
  for (int id : I) irows.insert(pos(id));
  for (int id : J) jcols.insert(pos(id));
  // set alpha_e = 0 for e in K
  for (int id : K) m[pos(id)][pos(id)] = Poly();
  std::vector<std::vector<Poly>> sub;
  for (int r = 0; r < static_cast<int>(m.size()); ++r) {
    if (r < static_cast<int>(ids.size()) && irows.count(r)) continue;
    std::vector<Poly> row;
    for (int c = 0; c < static_cast<int>(m.size()); ++c) {
      if (c < static_cast<int>(ids.size()) && jcols.count(c)) continue;
      row.push_back(m[r][c]);
    }
    sub.push_back(std::move(row));
  }
  int tau = static_cast<int>(I.size() * (I.size() - 1) / 2);
  for (int i : I)
    for (int j : J)
      if (i > j) ++tau;
  Poly d = det_bareiss(std::move(sub));
  return (tau % 2) ? -d : d;
}

}  // namespace

TEST_CASE("graph matrix shape and small determinants") {
  Graph single = Graph::build({{1, 2}});
  auto m = graph_matrix(single);
  REQUIRE(m.size() == 2);
  CHECK(det_bareiss(m) == Poly::constant(1));  // a tree has psi = 1

  Graph banana = Graph::build({{1, 2}, {1, 2}});
  CHECK(psi(banana) == Poly::variable(1) + Poly::variable(2));

  Graph tri = Graph::build({{1, 2}, {2, 3}, {1, 3}});
  CHECK(psi(tri) == Poly::variable(1) + Poly::variable(2) + Poly::variable(3));
}

TEST_CASE("psi equals tree sum and the literal determinant") {
  Rng rng(6001);
  for (int i = 0; i < 25; ++i) {
    Graph g = random_connected_multigraph(rng, 4 + static_cast<int>(rng.below(4)));
    Poly fast = psi(g);
    CHECK(fast == tree_sum_psi(g));
    CHECK(fast == dodgson_by_matrix(g, {}, {}, {}));
  }
}

TEST_CASE("psi of wheels and g8") {
  Graph w3 = Graph::catalog("wheel", 3);
  Poly p = psi(w3);
  CHECK(p.n_terms() == 16);
  CHECK(p.total_degree() == 3);
  CHECK(p.is_homogeneous());
  Graph g8 = Graph::catalog("g8");
  Poly p8 = psi(g8);
  CHECK(p8.is_homogeneous());
  CHECK(p8.total_degree() == 8);
  for (int v = 1; v <= 16; ++v) CHECK(p8.degree_in(v) <= 1);
}

TEST_CASE("dodgson equals the literal matrix minor, signs included") {
  Rng rng(6002);
  int done = 0;
  while (done < 25) {
    Graph g = random_connected_multigraph(rng, 4 + static_cast<int>(rng.below(3)));
    auto ids = g.active_edge_ids();
    if (ids.size() < 3) continue;
    DodgsonCalc calc(g);
    int a = ids[rng.below(ids.size())];
    int b = ids[rng.below(ids.size())];
    int k = ids[rng.below(ids.size())];
    std::vector<int> K = (k != a && k != b) ? std::vector<int>{k} : std::vector<int>{};
    CHECK(calc.dodgson({a}, {b}, K) == dodgson_by_matrix(g, {a}, {b}, K));
    ++done;
  }
}

TEST_CASE("empty minor is psi") {
  Graph w3 = Graph::catalog("wheel", 3);
  DodgsonCalc calc(w3);
  CHECK(calc.dodgson({}, {}) == calc.psi());
}

TEST_CASE("contraction-deletion on random instances") {
  Rng rng(6003);
  for (int i = 0; i < 30; ++i) {
    Graph g = random_connected_multigraph(rng, 5 + static_cast<int>(rng.below(3)));
    DodgsonCalc calc(g);
    auto ids = g.active_edge_ids();
    int e = ids[rng.below(ids.size())];
    Poly lhs = calc.psi();
    Poly rhs = calc.dodgson({e}, {e}) * Poly::variable(e) + calc.dodgson({}, {}, {e});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("multilinearity of dodgson polynomials") {
  Graph g8 = Graph::catalog("g8");
  DodgsonCalc calc(g8);
  Poly d = calc.dodgson({1, 3}, {2, 3});
  for (int v = 1; v <= 16; ++v) CHECK(d.degree_in(v) <= 1);
}

TEST_CASE("psi independent of edge orientation") {
  // flipping an edge orientation flips a row and a column sign in M
  std::vector<std::pair<int, int>> base = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}};
  Graph g1 = Graph::build(base);
  auto flipped = base;
  std::swap(flipped[4].first, flipped[4].second);
  Graph g2 = Graph::build(flipped);
  CHECK(psi(g1) == psi(g2));
}

TEST_CASE("three valent data on wheel(3)") {
  Graph w3 = Graph::catalog("wheel", 3);
  DodgsonCalc calc(w3);
  // every vertex of K4 is 3-valent
  for (int v = 1; v <= 4; ++v) {
    ThreeValentData d = calc.three_valent(v);  // asserts both identities
    CHECK(!d.f0.is_zero());
  }
  CHECK_THROWS_AS(DodgsonCalc(Graph::catalog("wheel", 4)).three_valent(5),
                  NotThreeValent);
}

TEST_CASE("three valent data on g8 vertex 1") {
  Graph g8 = Graph::catalog("g8");
  DodgsonCalc calc(g8);
  ThreeValentData d = calc.three_valent(1);  // edges 2, 3, 4
  CHECK(!d.f0.is_zero());
  // f0 matches the stated minor up to sign
  Poly f0d = calc.dodgson({2, 3}, {3, 4});
  CHECK((d.f0 == f0d || d.f0 == -f0d));
}

TEST_CASE("disconnected psi is zero via the separate entry") {
  Graph g = Graph::build({{1, 2}, {3, 4}, {3, 4}});
  DodgsonCalc calc(g);
  CHECK(calc.psi_or_zero().is_zero());
  CHECK_THROWS_AS(calc.psi(), Disconnected);
}
