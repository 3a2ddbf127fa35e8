#include <doctest.h>

#include "feynred/pipeline.hpp"
#include "feynred/textio.hpp"

using namespace feynred;

namespace {

// D_11 of the 16-edge catalog graph along the order 1..16, sign-normalized;
// regression-frozen from the reduction (the acceptance suite re-derives it
// end to end and checks it against the two-minor identity)
const char* kD11 =
    "+1*a12^2*a13^2*a16 +1*a12^2*a13*a14*a15 +2*a12^2*a13*a14*a16 "
    "+1*a12^2*a13*a15*a16 +1*a12^2*a13*a16^2 +1*a12^2*a14^2*a15 "
    "+1*a12^2*a14^2*a16 +2*a12^2*a14*a15*a16 +1*a12^2*a14*a16^2 "
    "+1*a12^2*a15*a16^2 +1*a12*a13^2*a14*a15 +1*a12*a13^2*a14*a16 "
    "+2*a12*a13^2*a15*a16 +1*a12*a13*a14^2*a15 +1*a12*a13*a14^2*a16 "
    "+1*a12*a13*a14*a15^2 +3*a12*a13*a14*a15*a16 +1*a12*a13*a14*a16^2 "
    "+1*a12*a13*a15^2*a16 +1*a12*a13*a15*a16^2 +1*a12*a14^2*a15^2 "
    "+2*a12*a14^2*a15*a16 +1*a12*a14^2*a16^2 +2*a12*a14*a15^2*a16 "
    "+2*a12*a14*a15*a16^2 +1*a12*a15^2*a16^2 +1*a13^2*a14*a15^2 "
    "+1*a13^2*a14*a15*a16 +1*a13^2*a15^2*a16";

}  // namespace

TEST_CASE("reference polynomials") {
  Poly j = g8_j();
  Poly t = g8_t();
  CHECK(j.n_terms() == 8);
  CHECK(t.set_var_one(4) == j);
  CHECK(t.is_homogeneous());
  CHECK(t.total_degree() == 4);
  // J at (1,1,1) vanishes
  CHECK(j.eval_mod_p({1, 2, 3}, {1, 1, 1}, 7) == 0);
  Poly p = g8_p_restricted();
  CHECK(p.is_homogeneous());
  CHECK(p.total_degree() == 3);
}

TEST_CASE("restriction of the frozen D11") {
  Poly d11 = poly_from_text(kD11);
  Poly restricted = d11.set_var_zero(16);
  Poly expect = Poly::variable(14) * Poly::variable(15) * g8_p_restricted();
  // the normalized D11 restricts to +a14*a15*P; the chain consumes -D11,
  // whose restriction carries the minus sign
  CHECK(restricted == expect);
}

TEST_CASE("two-minor identity against the frozen D11") {
  Poly d11 = poly_from_text(kD11);
  MinorIdentityCheck chk = check_d11_minor_identity(d11);
  CHECK(chk.ok);
  CHECK(chk.sign == 1);
}

TEST_CASE("substitution chain reaches J from the frozen D11") {
  Poly d11 = poly_from_text(kD11);
  ChainResult res = run_substitution_chain(-d11);  // sign fixed by the restriction
  CHECK(res.gamma_powers_removed == 3);
  CHECK(res.d_tilde.degree_in(14) == 1);
  CHECK(res.d_tilde.degree_in(15) == 1);
  CHECK(res.reached_j);
  CHECK(res.j_reached == g8_j());
}
