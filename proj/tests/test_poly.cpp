#include <doctest.h>

#include "feynred/poly.hpp"
#include "feynred/textio.hpp"

using namespace feynred;

namespace {
Poly v(int id) { return Poly::variable(id); }
}

TEST_CASE("basic arithmetic and canonical form") {
  Poly x = v(1), y = v(2);
  CHECK((x + y) * (x - y) == x * x - y * y);
  Poly p = x * 3 + y;
  CHECK(p + Poly() == p);
  CHECK(p - p == Poly());
  Poly s = (v(1) + v(2) + v(3));
  Poly sq = s * s;
  CHECK(sq.n_terms() == 6);
  int ones = 0, twos = 0;
  for (const auto& t : sq.terms()) {
    if (t.coef == 1) ++ones;
    if (t.coef == 2) ++twos;
  }
  CHECK(ones == 3);
  CHECK(twos == 3);
}

TEST_CASE("monomial order: leading term and normalization") {
  // a1^2 > a1*a2^9 > a2^5
  Poly p = v(1) * v(2) * Int(-1) + Poly::variable(1, 2);
  CHECK(p.leading().mon.exp(1) == 2);
  Poly q = -(v(1) * v(2));
  CHECK(q.lead_sign() < 0);
  CHECK(q.normalized().lead_sign() > 0);
}

TEST_CASE("decompose_quadratic") {
  Poly x = v(1), y = v(2), z = v(3);
  Poly d = (x + y) * (x * 2 + z);
  auto [a, b, c] = decompose_quadratic(d, 1);
  CHECK(a == Poly::constant(2));
  CHECK(b == z + y * 2);
  CHECK(c == y * z);
  Poly e = y * y + z;
  auto [a2, b2, c2] = decompose_quadratic(e, 1);
  CHECK(a2.is_zero());
  CHECK(b2.is_zero());
  CHECK(c2 == e);
  Poly cubic = Poly::variable(1, 3);
  CHECK_THROWS_AS(decompose_quadratic(cubic, 1), DegreeTooHigh);
}

TEST_CASE("resultant_linear") {
  Poly x = v(1), y = v(2);
  Poly f = x * 3 + y, g = x - y;
  // f^1 g_1 - f_1 g^1 = 3*(-y) - y*1 = -4y
  CHECK(resultant_linear(f, g, 1) == y * Int(-4));
  CHECK(resultant_linear(f, f, 1).is_zero());
  CHECK(resultant_linear(f, g, 1) == -resultant_linear(g, f, 1));
}

TEST_CASE("poly_sqrt") {
  Poly x = v(1), y = v(2), z = v(3);
  Poly r = x * y * 2 - z * z;
  auto s = poly_sqrt(r * r);
  REQUIRE(s.has_value());
  CHECK(*s == r.normalized());
  CHECK(!poly_sqrt(x * x + y * y).has_value());
  CHECK(!poly_sqrt(x * y).has_value());
  auto zero = poly_sqrt(Poly() * Poly());
  CHECK(zero.has_value());
  // constants
  CHECK(*poly_sqrt(Poly::constant(49)) == Poly::constant(7));
  CHECK(!poly_sqrt(Poly::constant(-4)).has_value());
  CHECK(!poly_sqrt(Poly::constant(8)).has_value());
}

TEST_CASE("exact division") {
  Poly x = v(1), y = v(2);
  Poly num = (x + y) * (x - y) * 3;
  auto q = Poly::exact_div(num, x + y);
  REQUIRE(q.has_value());
  CHECK(*q == (x - y) * 3);
  CHECK(!Poly::exact_div(x * x + y, x + y).has_value());
  CHECK(!Poly::exact_div(x * 3, x * 2).has_value());
}

TEST_CASE("halving") {
  Poly x = v(1);
  CHECK((x * 4).halved() == x * 2);
  CHECK_THROWS_AS((x * 3).halved(), OddHalving);
}

TEST_CASE("eval_mod_p") {
  Poly x = v(1), y = v(2);
  CHECK((x + y).eval_mod_p({1, 2}, {1, 1}, 2) == 0);
  CHECK((x * y).eval_mod_p({1, 2}, {2, 3}, 5) == 1);
}

TEST_CASE("substitute and ratio substitution") {
  Poly x = v(1), y = v(2);
  Poly f = x * x;
  // x -> x/y + 1 cleared by y^2 gives (x + y)^2
  Term den{Monomial{}, 1};
  den.mon.set_exp(2, 1);
  SubstResult r = substitute_ratio(f, 1, x + y, den, 2);
  CHECK(r.cleared == (x + y) * (x + y));
  CHECK(r.content.is_one());
  // scaling: x -> x*g stays polynomial
  Poly g = y + Poly::constant(1);
  CHECK(f.substitute(1, x * g) == x * x * g * g);
}

TEST_CASE("text round trip") {
  Poly p = v(1) * v(1) * 3 - v(2) * v(3) + Poly::constant(7);
  std::string s = poly_to_text(p);
  CHECK(poly_from_text(s) == p);
  CHECK(poly_from_text("0") == Poly());
  CHECK(poly_to_text(Poly()) == "0");
  CHECK(poly_from_text("+2*a1^2*a3 -1*a2") == Poly::variable(1, 2) * v(3) * 2 - v(2));
  // whitespace tolerated
  CHECK(poly_from_text("  +1*a1   -1*a2 ") == v(1) - v(2));
}

TEST_CASE("homogeneity flag") {
  Poly x = v(1), y = v(2);
  CHECK((x * y + x * x).is_homogeneous());
  CHECK(!(x * y + x).is_homogeneous());
}
