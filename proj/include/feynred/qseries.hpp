/* qseries.hpp
 *
 * Truncated q-expansions with exact integer coefficients: eta-product
 * expansion and the calibrate-then-validate probe that matches point counts
 * against the Fourier coefficients of a configured weight-3 form.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "feynred/poly.hpp"

namespace feynred {

struct EtaFactor {
  int dilation = 1;
  int exponent = 1;
};

class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(int nmax) : c_(nmax + 1, 0) {}
  int truncation() const { return static_cast<int>(c_.size()) - 1; }
  const Int& coeff(int n) const;  // coefficient of q^n
  Int& coeff(int n);
  friend QSeries operator*(const QSeries& a, const QSeries& b);  // min truncation
  QSeries inverse() const;  // needs constant term +-1
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<Int> c_;
};

// q^prefactor_power * prod_d prod_{n>=1} (1 - q^{d n})^{k_d}, truncated.
QSeries eta_expand(const std::vector<EtaFactor>& spec, int prefactor_power,
                   int nmax);

// "dilation exponent" lines plus "prefactor k"; '#' comments allowed.
struct EtaSpec {
  std::vector<EtaFactor> factors;
  int prefactor_power = 0;
};
EtaSpec parse_eta_spec(const std::string& text);

struct ProbeRelation {
  Int u;                 // multiplier of a_p
  Int c2, c1, c0;        // polynomial part c2 p^2 + c1 p + c0
};

struct ProbePrimeResult {
  std::uint32_t p = 0;
  bool calibration = false;
  bool ok = false;
  Int expected, actual;
};

struct ProbeReport {
  bool consistent_fit = false;  // some relation validated on >= min_validated
  bool signal = false;          // consistent and u != 0
  ProbeRelation relation;
  int n_validated = 0;
  std::vector<ProbePrimeResult> per_prime;
};

// Fits count(p) = u a_p + c2 p^2 + c1 p + c0 exactly on the two calibration
// primes, with (c2, c0) drawn from a small integer grid and (u, c1) solved
// over the rationals and accepted only when integral; validates exactly on
// every remaining prime.
ProbeReport k3_modularity_probe(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& prime_counts,
    const QSeries& coeffs, std::pair<std::uint32_t, std::uint32_t> calibration_primes,
    int min_validated = 3);

}  // namespace feynred
