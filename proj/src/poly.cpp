/* poly.cpp
 *
 * Arithmetic and the reduction-facing primitives (quadratic decomposition,
 * linear resultant, exact square root, ratio substitution).
 */
#include "feynred/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace feynred {

Poly Poly::constant(Int c) {
  Poly p;
  if (c != 0) p.t_.push_back({Monomial{}, std::move(c)});
  return p;
}

Poly Poly::variable(int var, int exp, Int c) {
  Poly p;
  if (c == 0) return p;
  Monomial m;
  if (exp != 0) m.set_exp(var, exp);
  p.t_.push_back({m, std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.t_ = std::move(terms);
  p.sort_and_combine();
  return p;
}

void Poly::sort_and_combine() {
  std::sort(t_.begin(), t_.end(),
            [](const Term& a, const Term& b) { return b.mon < a.mon; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t_.size();) {
    Int acc = std::move(t_[i].coef);
    std::size_t j = i + 1;
    while (j < t_.size() && t_[j].mon == t_[i].mon) acc += t_[j++].coef;
    if (acc != 0) {
      t_[out].mon = t_[i].mon;
      t_[out].coef = std::move(acc);
      ++out;
    }
    i = j;
  }
  t_.resize(out);
}

Poly PolyBuilder::build() { return Poly::from_terms(std::move(t_)); }

const Term& Poly::leading() const {
  if (t_.empty()) throw std::runtime_error("leading term of zero polynomial");
  return t_[0];
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : t_) d = std::max(d, t.mon.total_degree());
  return d;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : t_) d = std::max(d, t.mon.exp(var));
  return d;
}

bool Poly::is_homogeneous() const {
  if (t_.empty()) return true;
  int d = t_[0].mon.total_degree();
  for (const auto& t : t_)
    if (t.mon.total_degree() != d) return false;
  return true;
}

std::uint64_t Poly::var_mask() const {
  std::uint64_t m = 0;
  for (const auto& t : t_) m |= t.mon.var_mask();
  return m;
}

std::vector<int> Poly::variables() const {
  std::uint64_t m = var_mask();
  std::vector<int> v;
  for (int i = 1; i <= kMaxVars; ++i)
    if (m & (1ull << (i - 1))) v.push_back(i);
  return v;
}

Poly Poly::coeff_of(int var, int k) const {
  Poly r;
  for (const auto& t : t_)
    if (t.mon.exp(var) == k) {
      Monomial m = t.mon;
      m.set_exp(var, 0);
      r.t_.push_back({m, t.coef});
    }
  r.sort_and_combine();
  return r;
}

Poly Poly::set_var_zero(int var) const { return coeff_of(var, 0); }

Poly Poly::set_var_one(int var) const {
  Poly r;
  for (const auto& t : t_) {
    Monomial m = t.mon;
    m.set_exp(var, 0);
    r.t_.push_back({m, t.coef});
  }
  r.sort_and_combine();
  return r;
}

Poly Poly::substitute(int var, const Poly& repl) const {
  int dmax = degree_in(var);
  // Horner in var: collect coefficients c_k and fold.
  std::vector<Poly> ck(dmax + 1);
  for (int k = 0; k <= dmax; ++k) ck[k] = coeff_of(var, k);
  Poly acc = ck[dmax];
  for (int k = dmax - 1; k >= 0; --k) acc = acc * repl + ck[k];
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.coef = -t.coef;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() && j < b.t_.size()) {
    if (b.t_[j].mon < a.t_[i].mon) {
      r.t_.push_back(a.t_[i++]);
    } else if (a.t_[i].mon < b.t_[j].mon) {
      r.t_.push_back(b.t_[j++]);
    } else {
      Int c = a.t_[i].coef + b.t_[j].coef;
      if (c != 0) r.t_.push_back({a.t_[i].mon, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
  for (; j < b.t_.size(); ++j) r.t_.push_back(b.t_[j]);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() && j < b.t_.size()) {
    if (b.t_[j].mon < a.t_[i].mon) {
      r.t_.push_back(a.t_[i++]);
    } else if (a.t_[i].mon < b.t_[j].mon) {
      r.t_.push_back({b.t_[j].mon, -b.t_[j].coef});
      ++j;
    } else {
      Int c = a.t_[i].coef - b.t_[j].coef;
      if (c != 0) r.t_.push_back({a.t_[i].mon, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
  for (; j < b.t_.size(); ++j) r.t_.push_back({b.t_[j].mon, -b.t_[j].coef});
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.t_.size() == 1) return a * b.t_[0].coef * b.t_[0].mon;
  if (a.t_.size() == 1) return b * a.t_[0].coef * a.t_[0].mon;
  std::unordered_map<Monomial, Int, MonomialHash> acc;
  acc.reserve(a.t_.size() + b.t_.size());
  for (const auto& ta : a.t_) {
    for (const auto& tb : b.t_) {
      Monomial m = ta.mon * tb.mon;
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(m, ta.coef * tb.coef);
      } else {
        it->second += ta.coef * tb.coef;
      }
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) out.push_back({kv.first, std::move(kv.second)});
  Poly r;
  r.t_ = std::move(out);
  std::sort(r.t_.begin(), r.t_.end(),
            [](const Term& x, const Term& y) { return y.mon < x.mon; });
  return r;
}

Poly operator*(const Poly& a, const Int& c) {
  if (c == 0) return Poly();
  Poly r = a;
  for (auto& t : r.t_) t.coef *= c;
  return r;
}

Poly operator*(const Poly& a, const Monomial& m) {
  Poly r = a;
  for (auto& t : r.t_) t.mon = t.mon * m;
  // multiplying by a fixed monomial preserves the order
  return r;
}

std::optional<Poly> Poly::exact_div(const Poly& num, const Poly& den) {
  if (den.is_zero()) return std::nullopt;
  Poly rem = num;
  std::vector<Term> q;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    const Term& ld = den.leading();
    auto m = Monomial::divide(lr.mon, ld.mon);
    if (!m) return std::nullopt;
    Int c, residue;
    mpz_fdiv_qr(c.get_mpz_t(), residue.get_mpz_t(), lr.coef.get_mpz_t(),
                ld.coef.get_mpz_t());
    if (residue != 0) return std::nullopt;
    Term tq{*m, std::move(c)};
    rem = rem - (den * tq.coef * tq.mon);
    q.push_back(std::move(tq));
  }
  return Poly::from_terms(std::move(q));
}

Poly Poly::halved() const {
  Poly r = *this;
  for (auto& t : r.t_) {
    if (mpz_odd_p(t.coef.get_mpz_t())) throw OddHalving();
    mpz_fdiv_q_2exp(t.coef.get_mpz_t(), t.coef.get_mpz_t(), 1);
  }
  return r;
}

int Poly::lead_sign() const {
  if (t_.empty()) return 0;
  return sgn(t_[0].coef);
}

Poly Poly::normalized() const {
  if (lead_sign() < 0) return -*this;
  return *this;
}

Int Poly::content() const {
  Int g = 0;
  for (const auto& t : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Monomial Poly::monomial_content() const {
  if (t_.empty()) return Monomial{};
  Monomial g = t_[0].mon;
  for (const auto& t : t_) {
    for (int i = 0; i < kMaxVars; ++i) g.e[i] = std::min(g.e[i], t.mon.e[i]);
    if (g.is_one()) break;
  }
  return g;
}

std::uint64_t Poly::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& t : t_) {
    h ^= t.mon.hash();
    h *= 1099511628211ull;
    h ^= static_cast<std::uint64_t>(mpz_fdiv_ui(t.coef.get_mpz_t(), 0x7fffffff));
    h *= 1099511628211ull;
    h ^= (sgn(t.coef) < 0) ? 0x9e3779b97f4a7c15ull : 0;
  }
  return h;
}

std::uint32_t Poly::eval_mod_p(const std::vector<int>& ids,
                               const std::vector<std::uint32_t>& point,
                               std::uint32_t p) const {
  std::array<std::uint32_t, kMaxVars + 1> val{};
  for (std::size_t i = 0; i < ids.size(); ++i) val[ids[i]] = point[i] % p;
  std::uint64_t sum = 0;
  for (const auto& t : t_) {
    std::uint64_t m = mpz_fdiv_ui(t.coef.get_mpz_t(), p);
    for (int v = 1; v <= kMaxVars && m; ++v) {
      int e = t.mon.exp(v);
      for (int k = 0; k < e && m; ++k) m = (m * val[v]) % p;
    }
    sum += m;
  }
  return static_cast<std::uint32_t>(sum % p);
}

QuadDecomp decompose_quadratic(const Poly& d, int var) {
  int deg = d.degree_in(var);
  if (deg > 2) throw DegreeTooHigh(var, deg);
  return {d.coeff_of(var, 2), d.coeff_of(var, 1), d.coeff_of(var, 0)};
}

Poly resultant_linear(const Poly& f, const Poly& g, int var) {
  if (f.degree_in(var) > 1) throw DegreeTooHigh(var, f.degree_in(var));
  if (g.degree_in(var) > 1) throw DegreeTooHigh(var, g.degree_in(var));
  Poly f1 = f.coeff_of(var, 1), f0 = f.coeff_of(var, 0);
  Poly g1 = g.coeff_of(var, 1), g0 = g.coeff_of(var, 0);
  return f1 * g0 - f0 * g1;
}

namespace {

// square root of d viewed in the lowest present variable; see header notes
std::optional<Poly> sqrt_rec(const Poly& d) {
  if (d.is_zero()) return Poly();
  if (d.is_constant()) {
    const Int& c = d.leading().coef;
    if (sgn(c) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(c.get_mpz_t())) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());
    return Poly::constant(r);
  }
  auto vars = d.variables();
  int v = vars.front();
  int top = d.degree_in(v);
  if (top % 2 != 0) return std::nullopt;
  int t = top / 2;
  std::vector<Poly> dk(top + 1);
  for (int k = 0; k <= top; ++k) dk[k] = d.coeff_of(v, k);
  auto rt = sqrt_rec(dk[top]);
  if (!rt) return std::nullopt;
  std::vector<Poly> rk(t + 1);
  rk[t] = *rt;
  Poly two_rt = rk[t] * Int(2);
  for (int k = t - 1; k >= 0; --k) {
    // coefficient of v^(t+k) in r^2 equals d_{t+k}:
    //   d_{t+k} = 2 r_t r_k + sum of r_i r_j over i+j = t+k with k < i,j < t
    Poly rhs = dk[t + k];
    for (int i = k + 1; i <= t - 1; ++i) {
      int j = t + k - i;
      if (j < k + 1 || j > t - 1) continue;
      if (i > j) continue;
      if (i == j)
        rhs = rhs - rk[i] * rk[j];
      else
        rhs = rhs - rk[i] * rk[j] * Int(2);
    }
    auto q = Poly::exact_div(rhs, two_rt);
    if (!q) return std::nullopt;
    rk[k] = *q;
  }
  Poly r;
  for (int k = 0; k <= t; ++k) {
    Poly vk = Poly::variable(v, k);
    r = r + rk[k] * vk;
  }
  return r;
}

}  // namespace

std::optional<Poly> poly_sqrt(const Poly& d) {
  if (d.is_zero()) return Poly();
  if (d.lead_sign() < 0) return std::nullopt;
  auto r = sqrt_rec(d);
  if (!r) return std::nullopt;
  Poly rn = r->normalized();
  if (rn * rn != d) return std::nullopt;  // verify before returning
  return rn;
}

SubstResult substitute_ratio(const Poly& f, int var, const Poly& num,
                             const Term& den, int clear_exp) {
  int dmax = f.degree_in(var);
  if (clear_exp < dmax)
    throw std::runtime_error("clearing exponent below degree in variable");
  // sum_k c_k * num^k * den^(clear_exp - k)
  Poly denp = Poly::from_terms({den});
  std::vector<Poly> num_pow(dmax + 1), den_pow(clear_exp + 1);
  num_pow[0] = Poly::constant(1);
  for (int k = 1; k <= dmax; ++k) num_pow[k] = num_pow[k - 1] * num;
  den_pow[0] = Poly::constant(1);
  for (int k = 1; k <= clear_exp; ++k) den_pow[k] = den_pow[k - 1] * denp;
  Poly acc;
  for (int k = 0; k <= dmax; ++k) {
    Poly ck = f.coeff_of(var, k);
    if (ck.is_zero()) continue;
    acc = acc + ck * num_pow[k] * den_pow[clear_exp - k];
  }
  SubstResult res;
  res.content = acc.monomial_content();
  res.numeric_content = 1;
  if (!acc.is_zero() && !res.content.is_one()) {
    std::vector<Term> stripped;
    stripped.reserve(acc.n_terms());
    for (const auto& t : acc.terms())
      stripped.push_back({*Monomial::divide(t.mon, res.content), t.coef});
    acc = Poly::from_terms(std::move(stripped));
  }
  res.cleared = std::move(acc);
  return res;
}

}  // namespace feynred
