#include <doctest.h>

#include "feynred/countfp.hpp"
#include "feynred/dodgson.hpp"
#include "feynred/pipeline.hpp"
#include "feynred/randgraph.hpp"

using namespace feynred;

namespace {
Poly v(int id) { return Poly::variable(id); }
}

TEST_CASE("affine counts on tiny varieties") {
  // V(x) in A^1 over F_5: one point
  CHECK(count_affine({v(1)}, {1}, 5) == 1);
  // V(xy - 1) in A^2 over F_3: the units, two points
  CHECK(count_affine({v(1) * v(2) - Poly::constant(1)}, {1, 2}, 3) == 2);
  // empty system: everything
  CHECK(count_affine({}, {1, 2}, 3) == 9);
  CHECK_THROWS_AS(count_affine({v(1)}, {1}, 4), PrimeRequired);
}

TEST_CASE("projective counts") {
  Poly line = v(1) + v(2) + v(3);
  CHECK(count_projective({line}, {1, 2, 3}, 2) == 3);  // a P^1 over F_2
  // V(0) = P^n
  CHECK(count_projective({}, {1, 2, 3}, 3) == 13);  // 1 + 3 + 9
  CHECK(count_projective({v(1) + v(2)}, {1, 2}, 7) == 1);
  CHECK_THROWS_AS(count_projective({v(1) + Poly::constant(1)}, {1}, 3),
                  NonHomogeneous);
}

TEST_CASE("projective-affine cone relation") {
  Rng rng(8080);
  for (int i = 0; i < 10; ++i) {
    Graph g = random_connected_multigraph(rng, 4 + static_cast<int>(rng.below(3)));
    Poly ps = psi(g);
    for (std::uint32_t p : {2u, 3u}) {
      std::uint64_t cone = count_affine({ps}, g.active_edge_ids(), p);
      std::uint64_t proj = count_projective({ps}, g.active_edge_ids(), p);
      CHECK(proj * (p - 1) + 1 == cone);
    }
  }
}

TEST_CASE("independent matrix-evaluation route agrees") {
  Rng rng(9090);
  for (int i = 0; i < 8; ++i) {
    Graph g = random_connected_multigraph(rng, 4 + static_cast<int>(rng.below(3)));
    Poly ps = psi(g);
    for (std::uint32_t p : {2u, 3u}) {
      CHECK(count_affine({ps}, g.active_edge_ids(), p) ==
            count_psi_zeros_by_matrix(g, p));
    }
  }
}

TEST_CASE("thread partitioning does not change counts") {
  Poly j = g8_j();
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    std::uint64_t a = count_affine({j}, {1, 2, 3}, p, kDefaultBudget, 1);
    std::uint64_t b = count_affine({j}, {1, 2, 3}, p, kDefaultBudget, 3);
    CHECK(a == b);
  }
}

TEST_CASE("budget guard") {
  Poly ps = psi(Graph::catalog("g8"));
  CHECK_THROWS_AS(count_affine({ps}, Graph::catalog("g8").active_edge_ids(), 5,
                               1000000),
                  BudgetExceeded);
}

TEST_CASE("chevalley-warning on small graphs") {
  // triangle: |V(a1+a2+a3)| = p + 1 = 1 mod p
  for (std::uint32_t p : {2u, 3u, 5u}) {
    CwReport r = cw_congruence(Graph::catalog("cycle", 3), p);
    CHECK(r.congruent);
    CHECK(r.projective_count == p + 1);
  }
  Graph banana = Graph::build({{1, 2}, {1, 2}});
  CwReport rb = cw_congruence(banana, 3);
  CHECK(rb.projective_count == 1);
  CHECK(rb.congruent);
  for (std::uint32_t p : {2u, 3u}) {
    CHECK(cw_congruence(Graph::catalog("wheel", 3), p).congruent);
  }
}

TEST_CASE("quasipoly probe") {
  // counts of P^2: 1 + p + p^2 fits a quadratic with zero mismatch
  std::vector<std::pair<std::uint32_t, std::uint64_t>> tate;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) tate.emplace_back(p, 1 + p + p * p);
  QuasiPolyReport r = quasipoly_probe(tate, 2);
  CHECK(!r.nonzero_mismatch);
  // constant counts with degree 0
  std::vector<std::pair<std::uint32_t, std::uint64_t>> cst = {{2, 5}, {3, 5}, {5, 5}};
  CHECK(!quasipoly_probe(cst, 0).nonzero_mismatch);
  CHECK_THROWS_AS(quasipoly_probe(cst, 2), InsufficientPrimes);
}

TEST_CASE("hand count of V(J) over F_2") {
  // the eight points of F_2^3 evaluated by hand leave seven zeros
  Poly j = g8_j();
  CHECK(count_affine({j}, {1, 2, 3}, 2) == 7);
}

TEST_CASE("count shadow on a trace with a late weight drop") {
  // log-divergent (N = 2h) multigraph whose reduction shows a weight drop
  // at m >= 4 and still has a defined pair at k >= 5
  Graph g = Graph::build(
      {{1, 2}, {3, 1}, {4, 5}, {4, 5}, {4, 2}, {4, 1}, {3, 2}, {1, 2}});
  CHECK(g.n_edges_active() == 2 * g.loop_number());
  ReductionEngine e(g);
  auto ids = g.active_edge_ids();
  ReductionTrace tr = e.run(EdgeOrdering(ids.begin(), ids.end()));
  bool wd_late = false;
  for (int m = 4; m <= tr.depth(); ++m)
    if (tr.steps[m - 1].kind == StepKind::weight_drop) wd_late = true;
  CHECK(wd_late);
  ShadowCalibration cal{2, 0};
  CountReport rep = trace_count_shadow(tr, {2, 3}, cal);
  CHECK(rep.all_ok);
  CHECK(!rep.rows.empty());
}

TEST_CASE("smoothness shadow vacuous case") {
  SmoothnessReport r = smoothness_shadow(Graph::catalog("cycle", 3), 1, 2);
  CHECK(r.contained);
  CHECK(r.singular_cone_points == 0);
}

TEST_CASE("smoothness shadow on wheel(3)") {
  SmoothnessReport r = smoothness_shadow(Graph::catalog("wheel", 3), 1, 2);
  CHECK(r.contained);
}
