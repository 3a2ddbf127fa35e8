/* dodgson.cpp */
#include "feynred/dodgson.hpp"

#include <algorithm>
#include <numeric>

namespace feynred {

DodgsonCalc::DodgsonCalc(const Graph& g, std::size_t cache_limit)
    : g_(g), v_(g.n_vertices()), cache_limit_(cache_limit) {
  act_ = g_.active_edge_ids();
  act_pos_.assign(g_.n_edges_total() + 1, 0xff);
  for (std::size_t i = 0; i < act_.size(); ++i)
    act_pos_[act_[i]] = static_cast<std::uint8_t>(i);
  for (int id : act_) {
    const Edge& e = g_.edge(id);
    inc_.push_back({e.source, e.target});
  }
}

// Integer determinant of the (V-1)x(V-1) incidence minor picked out by
// edge_mask (bits index act_).  Entries are 0,+-1; the value is 0 or +-1.
// Fraction-free elimination keeps everything integral.
int DodgsonCalc::tree_det(std::uint32_t edge_mask) {
  {
    std::shared_lock lk(mu_);
    auto it = tree_det_memo_.find(edge_mask);
    if (it != tree_det_memo_.end()) return it->second;
  }
  int k = v_ - 1;
  std::vector<std::array<int, 2>> rows;
  for (int i = 0; i < static_cast<int>(act_.size()); ++i)
    if (edge_mask & (1u << i)) rows.push_back(inc_[i]);
  int det = 0;
  if (static_cast<int>(rows.size()) == k) {
    // dense signed incidence; Bareiss with 64-bit entries
    std::vector<std::vector<long long>> m(k, std::vector<long long>(k, 0));
    for (int r = 0; r < k; ++r) {
      auto [s, t] = rows[r];
      if (s <= k) m[r][s - 1] += 1;
      if (t <= k) m[r][t - 1] -= 1;
    }
    long long prev = 1;
    int sign = 1;
    bool singular = false;
    for (int c = 0; c < k && !singular; ++c) {
      int piv = -1;
      for (int r = c; r < k; ++r)
        if (m[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) {
        singular = true;
        break;
      }
      if (piv != c) {
        std::swap(m[piv], m[c]);
        sign = -sign;
      }
      for (int r = c + 1; r < k; ++r) {
        for (int cc = c + 1; cc < k; ++cc)
          m[r][cc] = (m[c][c] * m[r][cc] - m[r][c] * m[c][cc]) / prev;
        m[r][c] = 0;
      }
      prev = m[c][c];
    }
    det = singular ? 0 : sign * static_cast<int>(m[k - 1][k - 1]);
  }
  std::unique_lock lk(mu_);
  tree_det_memo_.emplace(edge_mask, det);
  return det;
}

bool DodgsonCalc::cache_get(const CacheKey& k, Poly* out) {
  std::unique_lock lk(mu_);
  auto it = cache_.find(k);
  if (it == cache_.end()) return false;
  lru_.splice(lru_.end(), lru_, it->second.lru_it);
  *out = it->second.value;
  return true;
}

void DodgsonCalc::cache_put(const CacheKey& k, const Poly& p) {
  std::unique_lock lk(mu_);
  if (cache_.count(k)) return;
  while (cache_.size() >= cache_limit_ && !lru_.empty()) {
    cache_.erase(lru_.front());
    lru_.pop_front();
  }
  lru_.push_back(k);
  cache_.emplace(k, CacheEntry{p, std::prev(lru_.end())});
}

Poly DodgsonCalc::dodgson_masks(std::uint32_t imask, std::uint32_t jmask,
                                std::uint32_t kmask) {
  std::array<std::uint32_t, 3> key{imask, jmask, kmask};
  Poly cached;
  if (cache_get(key, &cached)) return cached;

  int n = static_cast<int>(act_.size());
  std::uint32_t all = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  std::uint32_t eligible = all & ~(imask | jmask | kmask);
  int s = n - __builtin_popcount(imask) - (v_ - 1);
  // Normalization on top of the raw minor determinant: the factor
  // (-1)^(#{(i,j) in IxJ : i > j} + C(|I|,2)) makes the coefficient of a_e
  // in psi^{I,J} equal psi^{Ie,Je} on the nose, so contraction-deletion
  // holds without case-by-case signs.  It is +1 whenever I = J.
  int tau = 0;
  {
    int ni = __builtin_popcount(imask);
    for (int i = 0; i < n; ++i)
      if (imask & (1u << i)) tau += __builtin_popcount(jmask & ((1u << i) - 1));
    tau += ni * (ni - 1) / 2;
    tau &= 1;
  }
  // Extracting the diagonal entry of edge e is a principal removal only when
  // e's row rank and column rank agree; removing the I rows and J columns
  // shifts them, so each chosen e carries (-1)^(#I below e + #J below e).
  std::vector<int> parity(n, 0);
  {
    int ci = 0, cj = 0;
    for (int i = 0; i < n; ++i) {
      parity[i] = (ci + cj) & 1;
      if (imask & (1u << i)) ++ci;
      if (jmask & (1u << i)) ++cj;
    }
  }
  PolyBuilder pb;
  if (s >= 0 && s <= __builtin_popcount(eligible)) {
    std::vector<int> elig;
    for (int i = 0; i < n; ++i)
      if (eligible & (1u << i)) elig.push_back(i);
    int ne = static_cast<int>(elig.size());
    std::vector<int> choose(s);
    std::iota(choose.begin(), choose.end(), 0);
    bool running = true;
    if (s > ne) running = false;
    while (running) {
      std::uint32_t smask = 0;
      int sgn = tau;
      for (int c : choose) {
        smask |= (1u << elig[c]);
        sgn ^= parity[elig[c]];
      }
      std::uint32_t rmask = all & ~(imask | smask);
      int d1 = tree_det(rmask);
      if (d1 != 0) {
        std::uint32_t cmask = all & ~(jmask | smask);
        int d2 = tree_det(cmask);
        if (d2 != 0) {
          Monomial mon;
          for (int c : choose) mon.set_exp(act_[elig[c]], 1);
          pb.add(mon, Int(sgn ? -d1 * d2 : d1 * d2));
        }
      }
      if (s == 0) break;
      int i = s - 1;
      while (i >= 0 && choose[i] == ne - s + i) --i;
      if (i < 0) break;
      ++choose[i];
      for (int j = i + 1; j < s; ++j) choose[j] = choose[j - 1] + 1;
    }
  }
  Poly r = pb.build();
  cache_put(key, r);
  return r;
}

Poly DodgsonCalc::dodgson(const DodgsonKey& key) {
  if (key.i.size() != key.j.size()) throw BadKey("|I| != |J|");
  std::uint32_t im = 0, jm = 0, km = 0;
  auto to_mask = [&](const std::vector<int>& ids, std::uint32_t* m) {
    for (int id : ids) {
      if (!g_.is_active(id)) throw BadKey("inactive edge " + std::to_string(id));
      *m |= (1u << act_pos_[id]);
    }
  };
  to_mask(key.i, &im);
  to_mask(key.j, &jm);
  to_mask(key.k, &km);
  if (__builtin_popcount(im) != static_cast<int>(key.i.size()))
    throw BadKey("repeated id in I");
  if (__builtin_popcount(jm) != static_cast<int>(key.j.size()))
    throw BadKey("repeated id in J");
  return dodgson_masks(im, jm, km);
}

Poly DodgsonCalc::dodgson(std::vector<int> i, std::vector<int> j, std::vector<int> k) {
  return dodgson(DodgsonKey{std::move(i), std::move(j), std::move(k)});
}

Poly DodgsonCalc::psi_or_zero() { return dodgson_masks(0, 0, 0); }

Poly DodgsonCalc::psi() {
  if (!g_.connected()) throw Disconnected();
  return psi_or_zero();
}

ThreeValentData DodgsonCalc::three_valent(int vertex) {
  auto edges = g_.incident_edges(vertex);
  return three_valent(vertex, edges);
}

ThreeValentData DodgsonCalc::three_valent(int vertex, const std::vector<int>& edges) {
  if (g_.degree(vertex) != 3 || edges.size() != 3) throw NotThreeValent(vertex);
  for (int id : edges) {
    const Edge& e = g_.edge(id);
    if (!e.active || (e.source != vertex && e.target != vertex))
      throw NotThreeValent(vertex);
  }
  int e1 = edges[0], e2 = edges[1], e3 = edges[2];
  Poly ps = psi();
  // psi = f0*(a1a2 + a1a3 + a2a3) + (f1+f2)a3 + (f2+f3)a1 + (f1+f3)a2 + f123
  // determines everything; no sign freedom remains.
  Poly f0 = ps.coeff_of(e1, 1).coeff_of(e2, 1).set_var_zero(e3);
  Poly t3 = ps.coeff_of(e3, 1).set_var_zero(e1).set_var_zero(e2);  // f1+f2
  Poly t1 = ps.coeff_of(e1, 1).set_var_zero(e2).set_var_zero(e3);  // f2+f3
  Poly t2 = ps.coeff_of(e2, 1).set_var_zero(e1).set_var_zero(e3);  // f1+f3
  Poly f123 = ps.set_var_zero(e1).set_var_zero(e2).set_var_zero(e3);
  Poly f1 = (t2 + t3 - t1).halved();
  Poly f2 = (t1 + t3 - t2).halved();
  Poly f3 = (t1 + t2 - t3).halved();

  // assert the vertex expansion
  Poly a1 = Poly::variable(e1), a2 = Poly::variable(e2), a3 = Poly::variable(e3);
  Poly rebuilt = f0 * (a1 * a2 + a1 * a3 + a2 * a3) + (f1 + f2) * a3 +
                 (f2 + f3) * a1 + (f1 + f3) * a2 + f123;
  if (rebuilt != ps)
    throw std::runtime_error("3-valent vertex expansion failed to reproduce psi");
  // assert f0*f123 = f1 f2 + f1 f3 + f2 f3
  if (f0 * f123 != f1 * f2 + f1 * f3 + f2 * f3)
    throw std::runtime_error("3-valent vertex product identity failed");
  return {f0, f1, f2, f3, f123};
}

std::vector<std::vector<Poly>> graph_matrix(const Graph& g) {
  if (!g.connected()) throw Disconnected();
  auto ids = g.active_edge_ids();
  int n = static_cast<int>(ids.size());
  int k = g.n_vertices() - 1;
  int dim = n + k;
  std::vector<std::vector<Poly>> m(dim, std::vector<Poly>(dim));
  auto inc = g.incidence_matrix();
  for (int r = 0; r < n; ++r) {
    m[r][r] = Poly::variable(ids[r]);
    for (int c = 0; c < k; ++c) {
      if (inc[r][c] != 0) m[r][n + c] = Poly::constant(inc[r][c]);
      if (inc[r][c] != 0) m[n + c][r] = Poly::constant(-inc[r][c]);
    }
  }
  return m;
}

Poly det_bareiss(std::vector<std::vector<Poly>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return Poly::constant(1);
  Poly prev = Poly::constant(1);
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Poly();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r) {
      for (int cc = c + 1; cc < n; ++cc) {
        Poly num = m[c][c] * m[r][cc] - m[r][c] * m[c][cc];
        auto q = Poly::exact_div(num, prev);
        if (!q) throw std::runtime_error("Bareiss division not exact");
        m[r][cc] = std::move(*q);
      }
      m[r][c] = Poly();
    }
    prev = m[c][c];
  }
  Poly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

Poly psi(const Graph& g) {
  DodgsonCalc calc(g);
  return calc.psi();
}

Poly psi_with_tadpole_factors(const Graph& g) {
  Poly p = psi(g);
  for (int id : g.factored_tadpoles()) p = p * Poly::variable(id);
  return p;
}

}  // namespace feynred
