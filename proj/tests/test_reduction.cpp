#include <doctest.h>

#include "feynred/dodgson.hpp"
#include "feynred/randgraph.hpp"
#include "feynred/reduction.hpp"
#include "feynred/textio.hpp"

using namespace feynred;

namespace {
Poly v(int id) { return Poly::variable(id); }
}

TEST_CASE("reduce_step on a square is a weight drop") {
  Graph w3 = Graph::catalog("wheel", 3);
  Poly ps = psi(w3);
  ReductionStep st = reduce_step(ps * ps, 1);
  CHECK(st.kind == StepKind::weight_drop);
  Poly expect = (ps.coeff_of(1, 1) * ps.coeff_of(1, 0)).normalized();
  CHECK(st.d.value().normalized() == expect);
}

TEST_CASE("reduce_step generic on a product of distinct linears") {
  Poly x = v(1), y = v(2), z = v(3);
  Poly d = (x * 3 + y) * (x + z);
  ReductionStep st = reduce_step(d, 1);
  CHECK(st.kind == StepKind::generic);
  // resultant 3z - y up to normalization
  CHECK(st.d.value().normalized() == (z * 3 - y).normalized());
}

TEST_CASE("reduce_step undefined when discriminant is not a square") {
  Poly x = v(1), y = v(2), z = v(3);
  Poly d = x * x + y * x + z;  // disc y^2 - 4z
  ReductionStep st = reduce_step(d, 1);
  CHECK(st.kind == StepKind::undefined_stop);
}

TEST_CASE("reduce_step zero when variable absent from a square") {
  Poly y = v(2);
  ReductionStep st = reduce_step(y * y, 1);
  CHECK(st.kind == StepKind::zero);
}

TEST_CASE("wheel(3) trace along 1..6") {
  Graph w3 = Graph::catalog("wheel", 3);
  ReductionEngine engine(w3);
  ReductionTrace tr = engine.run({1, 2, 3, 4, 5, 6});
  REQUIRE(tr.depth() == 5);
  CHECK(tr.status == TraceStatus::exhausted);
  CHECK(tr.steps[0].kind == StepKind::weight_drop);
  CHECK(tr.steps[1].kind == StepKind::generic);
  CHECK(tr.steps[2].kind == StepKind::weight_drop);
  CHECK(tr.steps[3].kind == StepKind::generic);
  // D_2 = (psi^{1,2})^2
  DodgsonCalc calc(w3);
  Poly s = calc.dodgson({1}, {2});
  CHECK(tr.steps[1].d.value() == (s * s).normalized());
  // terminal D_4 = D_{N-2} has bidegree (1,1) in the last two variables
  Poly d4 = tr.steps[3].d.value();
  CHECK(d4.variables() == std::vector<int>{5, 6});
  CHECK(d4.degree_in(5) == 1);
  CHECK(d4.degree_in(6) == 1);
  // degrees follow deg D_m = 2h - m
  int h = w3.loop_number();
  for (int m = 1; m <= 4; ++m)
    CHECK(tr.steps[m - 1].d.total_degree() == 2 * h - m);
}

TEST_CASE("engine steps agree with spec-level reduce_step on expanded input") {
  Rng rng(31415);
  int done = 0;
  while (done < 12) {
    Graph g = random_bridgeless_multigraph(rng, 5 + static_cast<int>(rng.below(3)));
    ReductionEngine engine(g);
    auto ids = g.active_edge_ids();
    ReductionTrace tr = engine.run(EdgeOrdering(ids.begin(), ids.end()));
    // replay the whole trace with the plain-polynomial step
    Poly cur = tr.psi * tr.psi;
    for (int m = 1; m <= tr.depth(); ++m) {
      ReductionStep st = reduce_step(cur, tr.ordering[m - 1]);
      CHECK(st.kind == tr.steps[m - 1].kind);
      if (st.kind == StepKind::zero || st.kind == StepKind::undefined_stop) break;
      CHECK(st.d.value().normalized() == tr.steps[m - 1].d.value().normalized());
      cur = st.d.value();
    }
    ++done;
  }
}

TEST_CASE("reduction on a graph with a bridge dies at step 1") {
  // bridge as the first edge: psi has no alpha_1, D_1 = 0
  Graph g = Graph::build({{1, 2}, {2, 3}, {3, 4}, {2, 3}, {3, 4}});
  ReductionEngine engine(g);
  ReductionTrace tr = engine.run({1, 2, 3, 4, 5});
  CHECK(tr.steps[0].kind == StepKind::zero);
  CHECK(tr.status == TraceStatus::zero);
}

TEST_CASE("five invariant vanishes with a 2-valent vertex among the edges") {
  // 4-cycle with two doubled edges; vertex 4 stays 2-valent
  Graph g = Graph::build({{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 2}, {2, 3}});
  ReductionEngine engine(g);
  Poly fi = engine.five_invariant({3, 4, 1, 2, 5});
  CHECK(fi.is_zero());
}

TEST_CASE("resultant of the forced first split squares to a minor") {
  // triangle with a doubled edge
  Graph g = Graph::build({{1, 2}, {1, 2}, {2, 3}, {1, 3}});
  DodgsonCalc calc(g);
  Poly ps = calc.psi();
  Poly up = ps.coeff_of(1, 1), low = ps.coeff_of(1, 0);
  Poly r = resultant_linear(up, low, 2);
  Poly s = calc.dodgson({1}, {2});
  CHECK((r == s * s || r == -(s * s)));
  // and for wheel(3): the square root of the discriminant is the minor
  Graph w3 = Graph::catalog("wheel", 3);
  DodgsonCalc c3(w3);
  Poly ps3 = c3.psi();
  Poly d1 = ps3.coeff_of(1, 1) * ps3.coeff_of(1, 0);
  auto [a, b, c] = decompose_quadratic(d1, 2);
  auto root = poly_sqrt(b * b - a * c * Int(4));
  REQUIRE(root.has_value());
  CHECK(*root == (c3.dodgson({1}, {2}) * c3.dodgson({1}, {2})).normalized());
}

TEST_CASE("two-valent vertex first: early zero on the 4-cycle") {
  Graph c4 = Graph::catalog("cycle", 4);
  ReductionEngine engine(c4);
  ReductionTrace tr = engine.run({1, 2, 3});
  // D_1 = psi^1 psi_1 with psi^1 = 1; D_2 is a nonzero constant in the
  // remaining variables is impossible projectively, so the trace dies by m=3
  CHECK(tr.status == TraceStatus::zero);
  CHECK(tr.depth() <= 3);
}

TEST_CASE("psi orientation independence under all single flips") {
  Rng rng(606060);
  for (int t = 0; t < 10; ++t) {
    int n = 4 + static_cast<int>(rng.below(4));
    Graph g = random_connected_multigraph(rng, n);
    std::vector<std::pair<int, int>> base;
    for (const auto& e : g.all_edges()) base.emplace_back(e.source, e.target);
    Poly p0 = psi(Graph::build(base));
    for (std::size_t i = 0; i < base.size(); ++i) {
      auto flipped = base;
      std::swap(flipped[i].first, flipped[i].second);
      CHECK(psi(Graph::build(flipped)) == p0);
    }
  }
}

TEST_CASE("classify 4-cycle: trivially reducible") {
  Graph c4 = Graph::catalog("cycle", 4);
  Classification c = classify(c4, 100000);
  CHECK(c.reducible);
  CHECK(!c.budget_exhausted);
}

TEST_CASE("classify wheel(3): reducible without weight drop") {
  Classification c = classify(Graph::catalog("wheel", 3), 1000000);
  CHECK(c.verdict == Classification::Verdict::denominator_reducible);
  CHECK(!c.weight_drop_seen);
  CHECK(c.stuck_depth == 5);
  std::string label = predict_weight(c, Graph::catalog("wheel", 3));
  CHECK(label.find("Q(-3)") == 0);
}

TEST_CASE("budget exhaustion carries best-so-far") {
  Classification c = classify(Graph::catalog("wheel", 4), 3);
  CHECK(c.budget_exhausted);
  CHECK(c.states_visited <= 3);
}

TEST_CASE("predict_weight preconditions") {
  Graph c4 = Graph::catalog("cycle", 4);  // N=4, h=1
  Classification c = classify(c4, 100000);
  CHECK_THROWS_AS(predict_weight(c, c4), PreconditionViolated);
}
