/* dodgson.hpp
 *
 * The symbolic determinant layer: the block matrix M(g), the graph
 * polynomial psi = det M, and Dodgson minors det M(I,J)_K with signs frozen
 * by fixing M once per graph (edge rows ascending, vertex columns 1..V-1,
 * highest vertex column deleted).
 *
 * Fast path: expanding det M multilinearly in the edge variables leaves, for
 * each monomial, a pair of incidence minors whose integer determinants are
 * 0 or +-1.  So
 *
 *   det M(I,J)_K = sum over S of (prod_{e in S} a_e)
 *                  * det E[rows \ (I u S)] * det E[cols \ (J u S)]
 *
 * with S running over active edges outside I u J u K of the complementary
 * size.  The incidence determinants are memoized per graph.
 */
#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "feynred/graph.hpp"
#include "feynred/poly.hpp"

namespace feynred {

struct BadKey : std::runtime_error {
  explicit BadKey(const std::string& m) : std::runtime_error("bad Dodgson key: " + m) {}
};
struct NotThreeValent : std::runtime_error {
  explicit NotThreeValent(int v)
      : std::runtime_error("vertex not 3-valent: " + std::to_string(v)) {}
};

struct DodgsonKey {
  std::vector<int> i, j, k;  // edge-id sets, |i| == |j|
};

// f_i in the 3-valent vertex expansion, with signs pinned so that both the
// vertex expansion of psi and f0*f123 = f1*f2 + f1*f3 + f2*f3 hold exactly.
struct ThreeValentData {
  Poly f0, f1, f2, f3, f123;
};

class DodgsonCalc {
 public:
  explicit DodgsonCalc(const Graph& g, std::size_t cache_limit = 200000);

  const Graph& graph() const { return g_; }

  Poly psi();                      // throws Disconnected
  Poly psi_or_zero();              // zero polynomial for disconnected input
  Poly dodgson(const DodgsonKey& key);
  Poly dodgson(std::vector<int> i, std::vector<int> j, std::vector<int> k = {});

  // the caller's ordering map: edges[0..2] play the roles 1,2,3
  ThreeValentData three_valent(int vertex, const std::vector<int>& edges);
  ThreeValentData three_valent(int vertex);  // incident edges ascending

 private:
  Graph g_;
  std::vector<int> act_;                  // active ids ascending
  std::vector<std::uint8_t> act_pos_;     // id -> index in act_, or 0xff
  std::vector<std::array<int, 2>> inc_;   // per active edge: source, target
  int v_;                                 // vertex count

  int tree_det(std::uint32_t edge_mask);  // det of incidence rows, mask over act_ indices
  Poly dodgson_masks(std::uint32_t imask, std::uint32_t jmask, std::uint32_t kmask);

  using CacheKey = std::array<std::uint32_t, 3>;
  std::shared_mutex mu_;
  std::map<std::uint32_t, int> tree_det_memo_;
  struct CacheEntry {
    Poly value;
    std::list<CacheKey>::iterator lru_it;
  };
  std::size_t cache_limit_;
  std::map<CacheKey, CacheEntry> cache_;
  std::list<CacheKey> lru_;  // front = least recently used
  void cache_put(const CacheKey& k, const Poly& p);
  bool cache_get(const CacheKey& k, Poly* out);
};

// The literal (N + V - 1) square matrix; kept for inspection and as the slow
// determinant oracle in tests.
std::vector<std::vector<Poly>> graph_matrix(const Graph& g);

// Fraction-free Bareiss determinant over polynomial entries (exact divisions).
Poly det_bareiss(std::vector<std::vector<Poly>> m);

// Convenience one-shot helpers.
Poly psi(const Graph& g);
Poly psi_with_tadpole_factors(const Graph& g);  // restores factored tadpole variables

}  // namespace feynred
