/* poly.hpp
 *
 * Sparse multivariate polynomials over arbitrary-precision integers.
 * Variables are small positive ids (edge numbers); monomials keep a dense
 * exponent block so comparison and hashing are branch-free.
 */
#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace feynred {

using Int = mpz_class;

constexpr int kMaxVars = 32;

// Thrown by operations whose preconditions on degrees fail.
struct DegreeTooHigh : std::runtime_error {
  DegreeTooHigh(int var, int deg)
      : std::runtime_error("degree too high in a" + std::to_string(var) +
                           ": " + std::to_string(deg)) {}
};

// Thrown when a weight-drop halving meets an odd coefficient.
struct OddHalving : std::runtime_error {
  OddHalving() : std::runtime_error("middle coefficient not divisible by 2") {}
};

struct VarOutOfRange : std::runtime_error {
  explicit VarOutOfRange(int var)
      : std::runtime_error("variable id out of range: " + std::to_string(var)) {}
};

// Exponent vector for variables 1..kMaxVars.  Ordering: compare exponents of
// variable 1 first, then 2, ...; larger exponent at the first difference
// means the larger monomial.  This is a plain memcmp on the block.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  int exp(int var) const { return e[var - 1]; }
  void set_exp(int var, int k) {
    if (var < 1 || var > kMaxVars) throw VarOutOfRange(var);
    e[var - 1] = static_cast<std::uint8_t>(k);
  }
  int total_degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  std::uint64_t var_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) m |= (1ull << i);
    return m;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i)
      r.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
    return r;
  }
  // Divisibility test plus quotient; nullopt if any exponent underflows.
  static std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      if (a.e[i] < b.e[i]) return std::nullopt;
      r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
    }
    return r;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e.data(), b.e.data(), kMaxVars) == 0;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  // true if a < b in the monomial order
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e.data(), b.e.data(), kMaxVars) < 0;
  }
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    std::uint64_t w[4];
    std::memcpy(w, e.data(), sizeof(w));
    for (auto x : w) {
      h ^= x;
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return h;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial mon;
  Int coef;
};

// Canonical form: terms sorted by descending monomial order, no zero
// coefficients.  Two polynomials are equal iff their term vectors are equal.
class Poly {
 public:
  Poly() = default;
  static Poly zero() { return Poly(); }
  static Poly constant(Int c);
  static Poly variable(int var, int exp = 1, Int c = 1);
  static Poly from_terms(std::vector<Term> terms);  // normalizes

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mon.is_one()); }
  std::size_t n_terms() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }

  const Term& leading() const;  // throws on zero
  int total_degree() const;     // max over terms; -1 for zero
  int degree_in(int var) const;
  bool is_homogeneous() const;
  std::uint64_t var_mask() const;
  std::vector<int> variables() const;

  // coefficient of var^k, as a polynomial free of var
  Poly coeff_of(int var, int k) const;
  // substitute var := 0
  Poly set_var_zero(int var) const;
  // substitute var := 1
  Poly set_var_one(int var) const;
  // substitute var := replacement polynomial
  Poly substitute(int var, const Poly& repl) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
  Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
  Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }
  friend Poly operator*(const Poly& a, const Int& c);
  friend Poly operator*(const Poly& a, const Monomial& m);
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
      if (a.t_[i].mon != b.t_[i].mon || a.t_[i].coef != b.t_[i].coef) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // exact quotient, or nullopt if division leaves a remainder
  static std::optional<Poly> exact_div(const Poly& num, const Poly& den);
  // divide every coefficient by 2; throws OddHalving if any is odd
  Poly halved() const;
  // +1 if leading coefficient positive, -1 if negative, 0 for zero
  int lead_sign() const;
  // flip sign if leading coefficient is negative
  Poly normalized() const;
  // gcd of all coefficients (non-negative); 0 for the zero polynomial
  Int content() const;
  // largest monomial dividing every term
  Monomial monomial_content() const;

  std::uint64_t hash() const;

  // value at a point given mod p; point[i] is the value of variable ids[i]
  std::uint32_t eval_mod_p(const std::vector<int>& ids,
                           const std::vector<std::uint32_t>& point,
                           std::uint32_t p) const;

 private:
  std::vector<Term> t_;
  void sort_and_combine();
  friend class PolyBuilder;
};

// Accumulates terms with repeated monomials, then yields canonical form.
class PolyBuilder {
 public:
  void add(const Monomial& m, const Int& c) { t_.push_back({m, c}); }
  void add(const Monomial& m, Int&& c) { t_.push_back({m, std::move(c)}); }
  void reserve(std::size_t n) { t_.reserve(n); }
  Poly build();

 private:
  std::vector<Term> t_;
};

// d = A*x^2 + B*x + C with A, B, C free of x; requires deg_x(d) <= 2.
struct QuadDecomp {
  Poly a, b, c;
};
QuadDecomp decompose_quadratic(const Poly& d, int var);

// [f,g]_x = f^1 g_1 - f_1 g^1 for f, g of degree <= 1 in x.
Poly resultant_linear(const Poly& f, const Poly& g, int var);

// Exact square root, sign-normalized; nullopt when d is not a perfect square.
std::optional<Poly> poly_sqrt(const Poly& d);

// f with var := num/den (den a monomial with coefficient +-1... any single
// term), cleared by den^clear_exp.  Result must be a polynomial; the caller
// receives it together with its extracted monomial content.
struct SubstResult {
  Poly cleared;       // den^clear_exp * f(var -> num/den), content removed
  Monomial content;   // monomial content that was factored out
  Int numeric_content;
};
SubstResult substitute_ratio(const Poly& f, int var, const Poly& num,
                             const Term& den, int clear_exp);

}  // namespace feynred
