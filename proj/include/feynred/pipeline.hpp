/* pipeline.hpp
 *
 * The end-to-end run on the 16-edge catalog graph "g8": reduce along the
 * edge order 1..16 to D_11, verify D_11 against the two-minor determinant
 * identity, restrict at a16 = 0, follow the substitution chain down to the
 * cubic surface J, build the quartic T with T|_{d=1} = J, count points, and
 * run the interpolation and modularity probes.
 *
 * In the a,b,c,d coordinates of the final surfaces the variable ids are
 * a -> a1, b -> a2, c -> a3, d -> a4.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feynred/countfp.hpp"
#include "feynred/qseries.hpp"
#include "feynred/reduction.hpp"

namespace feynred {

// Reference polynomials for the tail of the chain.
Poly g8_p_restricted();  // P with D_11|_{a16=0} = -a14*a15*P
Poly g8_j();             // J(a,b,c)
Poly g8_t();             // T(a,b,c,d), T|_{d=1} = J

// The reduction of the catalog graph g8 along edge order 1..16, computed
// once per process (the symbolic part takes ~half a minute).
const ReductionTrace& g8_reduction_trace();

// D_11 as a two-minor identity.  The minors A (rows {1,5}, columns {7,8}
// removed, deletions {2,3,10}, contractions {4,6,9}) and B (deletions
// {2,3,5,7,8}, contractions {1,4,6,9,10}) are realized through the index
// calculus of the ambient matrix: a deleted edge joins both index sets, a
// contracted edge joins K.  Then with
//   X = psi^{15,78}(A\11),  Y = psi^{15,78}(A//11),
//   Bc = psi(B//11),        Bd = psi(B\11),
// one global sign gives D_11 = +-(X*Bc - Y*Bd), and one step earlier
// D_10 = -+ psi^{15,78}(A) * psi(B).
struct MinorIdentityCheck {
  bool ok = false;
  bool d10_product_ok = false;  // the factorization one step earlier
  int sign = 0;                 // sign against the normalized D_11
  std::string detail;
};

// Verifies D_11 (and D_10 when given) against the frozen identity.
MinorIdentityCheck check_d11_minor_identity(const Poly& d11,
                                            const Poly* d10 = nullptr);

struct ChainResult {
  Poly d_hat;      // D_11 at a16 = 1
  Poly d_tilde;    // after scaling a12, a13 by the triangle polynomial
  int gamma_powers_removed = 0;
  Poly p_resultant;  // eliminate a14 against the triangle polynomial
  Poly q;            // after a13 -> a13/a15 + 1
  Poly j_reached;    // after the affine shifts, in a,b,c ids 1,2,3
  Monomial j_unit;   // monomial unit between j_reached and the printed J
  int j_sign = 1;
  bool reached_j = false;
  std::string shifts_used;
};

ChainResult run_substitution_chain(const Poly& d11);

struct G8Report {
  ReductionTrace trace;
  Poly d11;  // normalized
  MinorIdentityCheck minor_identity;
  bool restriction_ok = false;  // D_11|_{a16=0} = -a14 a15 P up to global sign
  int global_sign = 1;
  ChainResult chain;
  bool t_restricts_to_j = false;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> j_affine_counts;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> t_projective_counts;
  QuasiPolyReport quasipoly;
  ProbeReport probe;
};

G8Report run_g8_pipeline(const std::vector<std::uint32_t>& primes,
                         const QSeries& eta_coeffs,
                         std::uint64_t budget = kDefaultBudget,
                         int n_threads = 1,
                         const std::string& artifact_dir = "");

}  // namespace feynred
