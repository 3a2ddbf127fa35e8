/* countfp.cpp */
#include "feynred/countfp.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <thread>

#include "feynred/dodgson.hpp"

namespace feynred {

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

// mod-p system over at most 16 variables, exponents at most 15, packed in
// one 64-bit word per monomial
struct ModPoly {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> t;  // packed mono, coef
  bool is_const() const { return t.empty() || (t.size() == 1 && t[0].first == 0); }
  std::uint32_t const_val() const { return t.empty() ? 0 : t[0].second; }
};

struct Counter {
  std::uint32_t p;
  int nvars;
  std::array<std::array<std::uint32_t, 16>, 17> powtab;  // powtab[v][e] = v^e

  void init_pow() {
    for (std::uint32_t v = 0; v < p && v < 17; ++v) {
      powtab[v][0] = 1 % p;
      for (int e = 1; e < 16; ++e)
        powtab[v][e] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(powtab[v][e - 1]) * v) % p);
    }
  }

  static int slot_exp(std::uint64_t mono, int slot) {
    return static_cast<int>((mono >> (4 * slot)) & 0xf);
  }

  ModPoly substitute(const ModPoly& f, int slot, std::uint32_t val) const {
    ModPoly r;
    r.t.reserve(f.t.size());
    std::uint64_t clear = ~(0xfull << (4 * slot));
    for (auto [m, c] : f.t) {
      int e = slot_exp(m, slot);
      std::uint32_t c2 = e == 0 ? c
                                : static_cast<std::uint32_t>(
                                      (static_cast<std::uint64_t>(c) * powtab[val][e]) % p);
      if (c2 == 0) continue;
      r.t.emplace_back(m & clear, c2);
    }
    std::sort(r.t.begin(), r.t.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < r.t.size();) {
      std::uint64_t m = r.t[i].first;
      std::uint64_t acc = 0;
      std::size_t j = i;
      while (j < r.t.size() && r.t[j].first == m) acc += r.t[j++].second;
      acc %= p;
      if (acc) r.t[out++] = {m, static_cast<std::uint32_t>(acc)};
      i = j;
    }
    r.t.resize(out);
    return r;
  }

  std::uint64_t pow_p(int k) const {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
  }

  // common zeros over the remaining slots [0, slot]
  std::uint64_t count(const std::vector<ModPoly>& sys, int slot) const {
    // constants rule immediately
    bool all_zero = true;
    for (const auto& f : sys) {
      if (f.is_const()) {
        if (f.const_val() != 0) return 0;
      } else {
        all_zero = false;
      }
    }
    if (all_zero) return pow_p(slot + 1);
    if (slot < 0) return 1;  // unreachable: non-constant with no slots
    bool used = false;
    for (const auto& f : sys) {
      for (auto [m, c] : f.t)
        if (slot_exp(m, slot) != 0) {
          used = true;
          break;
        }
      if (used) break;
    }
    if (!used) return p * count(sys, slot - 1);
    std::uint64_t total = 0;
    std::vector<ModPoly> child;
    child.reserve(sys.size());
    for (std::uint32_t v = 0; v < p; ++v) {
      child.clear();
      bool dead = false;
      for (const auto& f : sys) {
        ModPoly g = substitute(f, slot, v);
        if (g.is_const()) {
          if (g.const_val() != 0) {
            dead = true;
            break;
          }
          continue;  // identically satisfied
        }
        child.push_back(std::move(g));
      }
      if (dead) continue;
      if (child.empty())
        total += pow_p(slot);
      else
        total += count(child, slot - 1);
    }
    return total;
  }
};

std::vector<ModPoly> to_mod_system(const std::vector<Poly>& polys,
                                   const std::vector<int>& vars,
                                   std::uint32_t p) {
  if (vars.size() > 16)
    throw BudgetExceeded("more than 16 variables in counting domain");
  std::array<int, kMaxVars + 1> slot{};
  slot.fill(-1);
  for (std::size_t i = 0; i < vars.size(); ++i) slot[vars[i]] = static_cast<int>(i);
  std::vector<ModPoly> sys;
  for (const auto& f : polys) {
    ModPoly mf;
    for (const auto& t : f.terms()) {
      std::uint64_t m = 0;
      for (int v = 1; v <= kMaxVars; ++v) {
        int e = t.mon.exp(v);
        if (e == 0) continue;
        if (slot[v] < 0)
          throw std::runtime_error("polynomial uses a variable outside the domain");
        if (e > 15) throw BudgetExceeded("exponent too large to pack");
        m |= static_cast<std::uint64_t>(e) << (4 * slot[v]);
      }
      std::uint32_t c = static_cast<std::uint32_t>(mpz_fdiv_ui(t.coef.get_mpz_t(), p));
      if (c) mf.t.emplace_back(m, c);
    }
    std::sort(mf.t.begin(), mf.t.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < mf.t.size();) {
      std::uint64_t mm = mf.t[i].first;
      std::uint64_t acc = 0;
      std::size_t j = i;
      while (j < mf.t.size() && mf.t[j].first == mm) acc += mf.t[j++].second;
      acc %= p;
      if (acc) mf.t[out++] = {mm, static_cast<std::uint32_t>(acc)};
      i = j;
    }
    mf.t.resize(out);
    sys.push_back(std::move(mf));
  }
  return sys;
}

void check_budget(std::size_t nvars, std::uint32_t p, std::uint64_t budget) {
  long double points = 1;
  for (std::size_t i = 0; i < nvars; ++i) points *= p;
  if (points > static_cast<long double>(budget))
    throw BudgetExceeded("p^" + std::to_string(nvars) + " points");
}

}  // namespace

std::uint64_t count_affine(const std::vector<Poly>& polys,
                           const std::vector<int>& vars, std::uint32_t p,
                           std::uint64_t budget, int n_threads) {
  if (!is_prime_u32(p)) throw PrimeRequired(p);
  check_budget(vars.size(), p, budget);
  Counter ctr;
  ctr.p = p;
  ctr.nvars = static_cast<int>(vars.size());
  ctr.init_pow();
  auto sys = to_mod_system(polys, vars, p);
  int top = ctr.nvars - 1;
  if (top < 0) {
    for (const auto& f : sys)
      if (!f.is_const() || f.const_val() != 0) return 0;
    return 1;
  }
  if (n_threads <= 1 || p < 2) return ctr.count(sys, top);
  // deterministic partition over the top coordinate
  std::vector<std::uint64_t> parts(p, 0);
  std::vector<std::thread> pool;
  int nt = std::min<int>(n_threads, static_cast<int>(p));
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (std::uint32_t v = t; v < p; v += nt) {
        std::vector<ModPoly> child;
        bool dead = false;
        for (const auto& f : sys) {
          ModPoly g = ctr.substitute(f, top, v);
          if (g.is_const()) {
            if (g.const_val() != 0) {
              dead = true;
              break;
            }
            continue;
          }
          child.push_back(std::move(g));
        }
        if (dead) continue;
        parts[v] = child.empty() ? ctr.pow_p(top) : ctr.count(child, top - 1);
      }
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (std::uint32_t v = 0; v < p; ++v) total += parts[v];
  return total;
}

std::uint64_t count_projective(const std::vector<Poly>& polys,
                               const std::vector<int>& vars, std::uint32_t p,
                               std::uint64_t budget, int n_threads) {
  for (const auto& f : polys)
    if (!f.is_homogeneous()) throw NonHomogeneous();
  std::uint64_t cone = count_affine(polys, vars, p, budget, n_threads);
  if ((cone - 1) % (p - 1) != 0)
    throw std::runtime_error("cone count not congruent to 1 mod p-1");
  return (cone - 1) / (p - 1);
}

std::uint64_t count_psi_zeros_by_matrix(const Graph& g, std::uint32_t p,
                                        std::uint64_t budget) {
  if (!is_prime_u32(p)) throw PrimeRequired(p);
  if (!g.connected()) throw Disconnected();
  auto ids = g.active_edge_ids();
  int n = static_cast<int>(ids.size());
  check_budget(n, p, budget);
  int h = g.loop_number();
  // fundamental cycle basis from a spanning tree
  auto trees = [&]() {
    // first spanning tree greedily
    std::vector<int> tree;
    std::vector<int> parent(g.n_vertices() + 1);
    for (int v = 0; v <= g.n_vertices(); ++v) parent[v] = v;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int id : ids) {
      const Edge& e = g.edge(id);
      int a = find(e.source), b = find(e.target);
      if (a != b) {
        parent[a] = b;
        tree.push_back(id);
      }
    }
    return tree;
  }();
  // cycle vectors: one per non-tree edge; entries over edges
  std::vector<std::vector<int>> cyc;
  {
    std::vector<bool> in_tree(g.n_edges_total() + 1, false);
    for (int id : trees) in_tree[id] = true;
    // adjacency over tree edges
    std::vector<std::vector<std::pair<int, int>>> adj(g.n_vertices() + 1);
    for (int id : trees) {
      const Edge& e = g.edge(id);
      adj[e.source].push_back({e.target, id});
      adj[e.target].push_back({e.source, -id});
    }
    for (int id : ids) {
      if (in_tree[id]) continue;
      const Edge& e = g.edge(id);
      // path from target back to source through the tree (DFS)
      std::vector<int> path_sign(g.n_edges_total() + 1, 0);
      std::vector<int> stack = {e.source};
      std::vector<int> prev_edge(g.n_vertices() + 1, 0);
      std::vector<int> prev_node(g.n_vertices() + 1, 0);
      std::vector<bool> vis(g.n_vertices() + 1, false);
      vis[e.source] = true;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (u == e.target) break;
        for (auto [w, sid] : adj[u]) {
          if (vis[w]) continue;
          vis[w] = true;
          prev_edge[w] = sid;
          prev_node[w] = u;
          stack.push_back(w);
        }
      }
      std::vector<int> vec(n, 0);
      auto pos = [&](int eid) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), eid) -
                                ids.begin());
      };
      vec[pos(id)] = 1;  // the chord, oriented source -> target
      int cur = e.target;
      while (cur != e.source) {
        int sid = prev_edge[cur];
        // walking backwards: tree edge sid was traversed prev_node -> cur
        vec[pos(std::abs(sid))] += (sid > 0) ? 1 : -1;
        cur = prev_node[cur];
      }
      cyc.push_back(std::move(vec));
    }
  }
  if (static_cast<int>(cyc.size()) != h)
    throw std::runtime_error("cycle basis size mismatch");
  if (h == 0) return 0;  // psi = 1, never zero
  // iterate all points, incremental Gram update on the last coordinate
  std::vector<std::uint32_t> alpha(n, 0);
  std::vector<std::vector<std::uint32_t>> gram(h, std::vector<std::uint32_t>(h, 0));
  auto gram_of = [&]() {
    for (auto& row : gram) std::fill(row.begin(), row.end(), 0);
    for (int e = 0; e < n; ++e) {
      if (alpha[e] == 0) continue;
      for (int i = 0; i < h; ++i) {
        if (cyc[i][e] == 0) continue;
        for (int j = 0; j < h; ++j) {
          if (cyc[j][e] == 0) continue;
          long long add = static_cast<long long>(cyc[i][e]) * cyc[j][e];
          long long v = (gram[i][j] + add % p * alpha[e]) % p;
          gram[i][j] = static_cast<std::uint32_t>((v + p) % p);
        }
      }
    }
  };
  auto det_mod = [&](std::vector<std::vector<std::uint32_t>> m) -> std::uint32_t {
    std::uint64_t det = 1;
    for (int c = 0; c < h; ++c) {
      int piv = -1;
      for (int r = c; r < h; ++r)
        if (m[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        std::swap(m[piv], m[c]);
        det = (det * (p - 1)) % p;
      }
      std::uint64_t inv = 1, base = m[c][c], ex = p - 2;
      while (ex) {
        if (ex & 1) inv = inv * base % p;
        base = base * base % p;
        ex >>= 1;
      }
      det = det * m[c][c] % p;
      for (int r = c + 1; r < h; ++r) {
        if (m[r][c] == 0) continue;
        std::uint64_t f = m[r][c] * inv % p;
        for (int cc = c; cc < h; ++cc) {
          std::uint64_t sub = f * m[c][cc] % p;
          m[r][cc] = static_cast<std::uint32_t>((m[r][cc] + p - sub) % p);
        }
      }
    }
    return static_cast<std::uint32_t>(det);
  };
  std::uint64_t zeros = 0;
  while (true) {
    gram_of();
    if (det_mod(gram) == 0) ++zeros;
    int k = n - 1;
    while (k >= 0 && alpha[k] == p - 1) alpha[k--] = 0;
    if (k < 0) break;
    ++alpha[k];
  }
  return zeros;
}

CwReport cw_congruence(const Graph& g, std::uint32_t p, std::uint64_t budget) {
  if (!g.connected()) throw Disconnected();
  int n = g.n_edges_active();
  int h = g.loop_number();
  if (h > n - 1)
    throw std::runtime_error("degree exceeds ambient dimension; congruence inapplicable");
  Poly ps = psi(g);
  CwReport r;
  r.p = p;
  r.projective_count = count_projective({ps}, g.active_edge_ids(), p, budget);
  r.count_mod_p = static_cast<std::uint32_t>(r.projective_count % p);
  r.congruent = (r.count_mod_p == 1 % p);
  return r;
}

namespace {

std::vector<int> remaining_vars(const ReductionTrace& t, int k) {
  std::vector<int> elim(t.ordering.begin(), t.ordering.begin() + k);
  std::vector<int> vars;
  for (int m = 1; m <= t.n_edges; ++m) {
    bool gone = false;
    for (int e : elim)
      if (e == m) gone = true;
    if (!gone) vars.push_back(m);
  }
  return vars;
}

}  // namespace

std::optional<ShadowCalibration> calibrate_shadow(
    const std::vector<const ReductionTrace*>& traces,
    const std::vector<std::uint32_t>& primes, std::uint64_t budget) {
  struct Sample {
    std::uint32_t p;
    std::uint32_t want;  // (c_{k+1} + c_k) mod p
  };
  std::vector<Sample> samples;
  // calibration may draw on the k = 3, 4 pairs of small wheels, where the
  // trace is too short to reach position 5
  for (const auto* t : traces) {
    for (int k = 3; k + 1 <= t->depth(); ++k) {
      const auto* dk = t->step_poly(k);
      const auto* dk1 = t->step_poly(k + 1);
      if (!dk || !dk1 || dk->is_zero() || dk1->is_zero()) continue;
      for (std::uint32_t p : primes) {
        std::uint64_t ck =
            count_projective({dk->value()}, remaining_vars(*t, k), p, budget);
        std::uint64_t ck1 =
            count_projective({dk1->value()}, remaining_vars(*t, k + 1), p, budget);
        samples.push_back({p, static_cast<std::uint32_t>((ck + ck1) % p)});
      }
    }
  }
  if (samples.empty()) return std::nullopt;
  for (long long r1 = 0; r1 <= 1; ++r1) {
    for (long long r0 = 0; r0 < 30; ++r0) {
      bool ok = true;
      for (const auto& s : samples) {
        long long rp = (r0 + r1 * s.p) % s.p;
        if (((rp % s.p) + s.p) % s.p != s.want) {
          ok = false;
          break;
        }
      }
      if (ok) return ShadowCalibration{r0, r1};
    }
  }
  return std::nullopt;
}

CountReport trace_count_shadow(const ReductionTrace& t,
                               const std::vector<std::uint32_t>& primes,
                               const ShadowCalibration& cal,
                               std::uint64_t budget, int n_threads) {
  CountReport rep;
  rep.description = "consecutive denominator counts";
  int pairs = 0;
  for (int k = 5; k + 1 <= t.depth(); ++k) {
    const auto* dk = t.step_poly(k);
    const auto* dk1 = t.step_poly(k + 1);
    if (!dk || !dk1 || dk->is_zero() || dk1->is_zero()) continue;
    ++pairs;
    for (std::uint32_t p : primes) {
      ShadowRow row;
      row.k = k;
      row.p = p;
      row.count_k =
          count_projective({dk->value()}, remaining_vars(t, k), p, budget, n_threads);
      row.count_k1 = count_projective({dk1->value()}, remaining_vars(t, k + 1), p,
                                      budget, n_threads);
      long long rp = cal.r0 + cal.r1 * static_cast<long long>(p);
      long long rhs = ((rp - static_cast<long long>(row.count_k % p)) % p + p) % p;
      row.lhs = static_cast<std::uint32_t>(row.count_k1 % p);
      row.rhs = static_cast<std::uint32_t>(rhs);
      row.ok = (row.lhs == row.rhs);
      if (!row.ok) rep.all_ok = false;
      rep.rows.push_back(row);
    }
  }
  if (pairs == 0)
    throw std::runtime_error("trace has no consecutive defined denominators at k >= 5");
  return rep;
}

QuasiPolyReport quasipoly_probe(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& counts,
    int max_degree) {
  int need = max_degree + 2;
  if (static_cast<int>(counts.size()) < need) throw InsufficientPrimes();
  int m = max_degree + 1;
  // solve Vandermonde system through the first m points over Q
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(m + 1));
  for (int i = 0; i < m; ++i) {
    mpq_class x = counts[i].first;
    mpq_class pw = 1;
    for (int j = 0; j < m; ++j) {
      a[i][j] = pw;
      pw *= x;
    }
    a[i][m] = mpq_class(static_cast<unsigned long>(counts[i].second));
  }
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("singular interpolation system");
    std::swap(a[piv], a[c]);
    for (int r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[c][c];
      for (int cc = c; cc <= m; ++cc) a[r][cc] -= f * a[c][cc];
    }
  }
  QuasiPolyReport rep;
  rep.fitted.resize(m);
  for (int i = 0; i < m; ++i) rep.fitted[i] = a[i][m] / a[i][i];
  for (int i = m; i < static_cast<int>(counts.size()); ++i) {
    mpq_class x = counts[i].first;
    mpq_class val = 0, pw = 1;
    for (int j = 0; j < m; ++j) {
      val += rep.fitted[j] * pw;
      pw *= x;
    }
    mpq_class resid = mpq_class(static_cast<unsigned long>(counts[i].second)) - val;
    if (resid != 0) rep.nonzero_mismatch = true;
    rep.residuals.emplace_back(counts[i].first, resid);
  }
  return rep;
}

SmoothnessReport smoothness_shadow(const Graph& g, int e, std::uint32_t p,
                                   std::uint64_t budget) {
  if (!g.connected()) throw Disconnected();
  DodgsonCalc calc(g);
  Poly up = calc.dodgson({e}, {e});        // psi^e
  Poly low = calc.dodgson({}, {}, {e});    // psi_{G,e}
  std::vector<int> vars;
  for (int id : g.active_edge_ids())
    if (id != e) vars.push_back(id);
  std::vector<Poly> sing = {up};
  for (int v : vars) {
    Poly d = up.coeff_of(v, 1);  // partial derivative: psi^e is multilinear
    if (!d.is_zero()) sing.push_back(d);
  }
  SmoothnessReport rep;
  rep.p = p;
  rep.singular_cone_points = count_affine(sing, vars, p, budget);
  std::vector<Poly> with_target = sing;
  with_target.push_back(low);
  std::uint64_t both = count_affine(with_target, vars, p, budget);
  rep.contained = (both == rep.singular_cone_points);
  return rep;
}

}  // namespace feynred
