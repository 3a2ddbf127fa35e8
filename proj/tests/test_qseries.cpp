#include <doctest.h>

#include "feynred/qseries.hpp"

using namespace feynred;

TEST_CASE("euler product start") {
  // prod (1 - q^n) = 1 - q - q^2 + q^5 + ...
  QSeries s = eta_expand({{1, 1}}, 0, 5);
  CHECK(s.coeff(0) == 1);
  CHECK(s.coeff(1) == -1);
  CHECK(s.coeff(2) == -1);
  CHECK(s.coeff(3) == 0);
  CHECK(s.coeff(4) == 0);
  CHECK(s.coeff(5) == 1);
}

TEST_CASE("pure prefactor") {
  QSeries s = eta_expand({}, 1, 4);
  CHECK(s.coeff(0) == 0);
  CHECK(s.coeff(1) == 1);
  CHECK(s.coeff(2) == 0);
}

TEST_CASE("weight-3 spec starts 1, -3") {
  QSeries s = eta_expand({{1, 3}, {7, 3}}, 1, 8);
  CHECK(s.coeff(1) == 1);
  CHECK(s.coeff(2) == -3);
  CHECK(s.coeff(3) == 0);
  CHECK(s.coeff(4) == 5);
  CHECK(s.coeff(5) == 0);
  CHECK(s.coeff(7) == -7);
}

TEST_CASE("multiplicative under spec concatenation") {
  QSeries a = eta_expand({{1, 2}}, 0, 12);
  QSeries b = eta_expand({{3, 1}}, 0, 12);
  QSeries ab = eta_expand({{1, 2}, {3, 1}}, 0, 12);
  CHECK(a * b == ab);
}

TEST_CASE("negative exponents invert") {
  QSeries one = eta_expand({{1, 2}, {1, -2}}, 0, 10);
  for (int n = 1; n <= 10; ++n) CHECK(one.coeff(n) == 0);
  CHECK(one.coeff(0) == 1);
}

TEST_CASE("hecke multiplicativity within truncation") {
  QSeries s = eta_expand({{1, 3}, {7, 3}}, 1, 40);
  auto a = [&](int n) { return s.coeff(n); };
  // coprime pairs (m, n) with m*n <= 40
  std::vector<std::pair<int, int>> pairs = {{2, 3}, {2, 5}, {3, 4}, {2, 9},
                                            {4, 5}, {3, 8}, {2, 11}, {5, 8}};
  for (auto [m, n] : pairs) CHECK(a(m * n) == a(m) * a(n));
}

TEST_CASE("eta spec parser") {
  EtaSpec spec = parse_eta_spec("# weight 3 form\n1 3\n7 3\nprefactor 1\n");
  REQUIRE(spec.factors.size() == 2);
  CHECK(spec.factors[0].dilation == 1);
  CHECK(spec.factors[0].exponent == 3);
  CHECK(spec.factors[1].dilation == 7);
  CHECK(spec.prefactor_power == 1);
}

TEST_CASE("probe recovers a synthetic relation") {
  QSeries s = eta_expand({{1, 3}, {7, 3}}, 1, 20);
  // u = 3 with a linear lift keeping every count positive
  std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    long long c = 3 * s.coeff(p).get_si() + p * p + 5 * p + 1;
    REQUIRE(c >= 0);
    counts.emplace_back(p, static_cast<std::uint64_t>(c));
  }
  ProbeReport r = k3_modularity_probe(counts, s, {2, 3}, 3);
  CHECK(r.consistent_fit);
  CHECK(r.signal);
  CHECK(r.relation.u == 3);
  CHECK(r.relation.c2 == 1);
  CHECK(r.relation.c1 == 5);
  CHECK(r.relation.c0 == 1);
  CHECK(r.n_validated == 4);
}

TEST_CASE("probe verdict invariant under permuting the validation primes") {
  QSeries s = eta_expand({{1, 3}, {7, 3}}, 1, 20);
  std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    long long c = 3 * s.coeff(p).get_si() + p * p + 5 * p + 1;
    counts.emplace_back(p, static_cast<std::uint64_t>(c));
  }
  ProbeReport r1 = k3_modularity_probe(counts, s, {2, 3}, 3);
  std::swap(counts[2], counts[5]);
  std::swap(counts[3], counts[4]);
  ProbeReport r2 = k3_modularity_probe(counts, s, {2, 3}, 3);
  CHECK(r1.signal == r2.signal);
  CHECK(r1.n_validated == r2.n_validated);
  CHECK(r1.relation.u == r2.relation.u);
  CHECK(r1.relation.c1 == r2.relation.c1);
}

TEST_CASE("probe reports u = 0 on Tate counts") {
  QSeries s = eta_expand({{1, 3}, {7, 3}}, 1, 20);
  std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
  for (std::uint32_t p : {2u, 3u, 5u, 11u, 13u}) counts.emplace_back(p, 1 + p + p * p);
  ProbeReport r = k3_modularity_probe(counts, s, {2, 3}, 3);
  CHECK(r.consistent_fit);
  CHECK(!r.signal);
  CHECK(r.relation.u == 0);
}
