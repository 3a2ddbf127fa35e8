/* countfp.hpp
 *
 * Brute-force point counting over prime fields, and the arithmetic shadows
 * of the cohomological statements: the Chevalley-Warning congruence, the
 * consecutive-denominator count relation, Jacobian-locus containment, and
 * exact polynomial interpolation residuals.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "feynred/graph.hpp"
#include "feynred/poly.hpp"
#include "feynred/reduction.hpp"

namespace feynred {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& m)
      : std::runtime_error("evaluation budget exceeded: " + m) {}
};
struct NonHomogeneous : std::runtime_error {
  NonHomogeneous() : std::runtime_error("projective count needs homogeneous polynomials") {}
};
struct PrimeRequired : std::runtime_error {
  explicit PrimeRequired(std::uint32_t p)
      : std::runtime_error("not a prime: " + std::to_string(p)) {}
};
struct CalibrationMissing : std::runtime_error {
  CalibrationMissing() : std::runtime_error("shadow calibration constants missing") {}
};
struct InsufficientPrimes : std::runtime_error {
  InsufficientPrimes() : std::runtime_error("not enough primes supplied") {}
};

constexpr std::uint64_t kDefaultBudget = 1000000000ull;

bool is_prime_u32(std::uint32_t p);

// Number of common zeros of polys in F_p^{|vars|}.  The order of `vars`
// fixes the evaluation order; n_threads partitions the outer coordinate and
// never changes the result.
std::uint64_t count_affine(const std::vector<Poly>& polys,
                           const std::vector<int>& vars, std::uint32_t p,
                           std::uint64_t budget = kDefaultBudget,
                           int n_threads = 1);

// (cone count - 1) / (p - 1); asserts homogeneity and integrality.
std::uint64_t count_projective(const std::vector<Poly>& polys,
                               const std::vector<int>& vars, std::uint32_t p,
                               std::uint64_t budget = kDefaultBudget,
                               int n_threads = 1);

// Independent evaluation route for the graph hypersurface: per point, the
// determinant of the cycle-space Gram matrix sum_e a_e c_e c_e^T.
std::uint64_t count_psi_zeros_by_matrix(const Graph& g, std::uint32_t p,
                                        std::uint64_t budget = kDefaultBudget);

struct CwReport {
  std::uint32_t p = 0;
  std::uint64_t projective_count = 0;
  std::uint32_t count_mod_p = 0;   // should be 1
  bool congruent = false;
};
CwReport cw_congruence(const Graph& g, std::uint32_t p,
                       std::uint64_t budget = kDefaultBudget);

// r(p) = r0 + r1*p in c_{k+1} = -c_k + r(p) mod p.
struct ShadowCalibration {
  long long r0 = 0;
  long long r1 = 0;
};

// One-time fit on sample traces; lexicographically smallest (r1, r0) that
// satisfies every sample congruence.
std::optional<ShadowCalibration> calibrate_shadow(
    const std::vector<const ReductionTrace*>& traces,
    const std::vector<std::uint32_t>& primes,
    std::uint64_t budget = kDefaultBudget);

struct ShadowRow {
  int k = 0;
  std::uint32_t p = 0;
  std::uint64_t count_k = 0, count_k1 = 0;
  std::uint32_t lhs = 0, rhs = 0;  // c_{k+1} mod p vs (-c_k + r(p)) mod p
  bool ok = false;
};
struct CountReport {
  std::string description;
  std::vector<ShadowRow> rows;
  bool all_ok = true;
};
CountReport trace_count_shadow(const ReductionTrace& t,
                               const std::vector<std::uint32_t>& primes,
                               const ShadowCalibration& cal,
                               std::uint64_t budget = kDefaultBudget,
                               int n_threads = 1);

struct QuasiPolyReport {
  std::vector<mpq_class> fitted;            // coefficients, degree ascending
  std::vector<std::pair<std::uint32_t, mpq_class>> residuals;
  bool nonzero_mismatch = false;
};
QuasiPolyReport quasipoly_probe(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& counts,
    int max_degree);

struct SmoothnessReport {
  std::uint32_t p = 0;
  std::uint64_t singular_cone_points = 0;
  bool contained = false;
};
// Every F_p point where psi^e and all its partials vanish must satisfy
// psi_{G,e} = 0.
SmoothnessReport smoothness_shadow(const Graph& g, int e, std::uint32_t p,
                                   std::uint64_t budget = kDefaultBudget);

}  // namespace feynred
