/* qseries.cpp */
#include "feynred/qseries.hpp"

#include <algorithm>
#include <sstream>

#include "feynred/countfp.hpp"

namespace feynred {

const Int& QSeries::coeff(int n) const {
  if (n < 0 || n > truncation())
    throw std::runtime_error("coefficient index beyond truncation");
  return c_[n];
}

Int& QSeries::coeff(int n) {
  if (n < 0 || n > truncation())
    throw std::runtime_error("coefficient index beyond truncation");
  return c_[n];
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  int nmax = std::min(a.truncation(), b.truncation());
  QSeries r(nmax);
  for (int i = 0; i <= nmax; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j <= nmax; ++j) {
      if (b.c_[j] == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

QSeries QSeries::inverse() const {
  int nmax = truncation();
  if (c_.empty() || (c_[0] != 1 && c_[0] != -1))
    throw std::runtime_error("series inverse needs constant term +-1");
  QSeries r(nmax);
  r.c_[0] = c_[0];  // 1/(+-1) = +-1
  for (int n = 1; n <= nmax; ++n) {
    Int s = 0;
    for (int i = 1; i <= n; ++i) s += c_[i] * r.c_[n - i];
    r.c_[n] = -c_[0] * s;
  }
  return r;
}

QSeries eta_expand(const std::vector<EtaFactor>& spec, int prefactor_power,
                   int nmax) {
  if (nmax < 1) throw std::runtime_error("nmax must be >= 1");
  QSeries acc(nmax);
  acc.coeff(0) = 1;
  for (const auto& f : spec) {
    QSeries part(nmax);
    part.coeff(0) = 1;
    for (int n = 1; n * f.dilation <= nmax; ++n) {
      QSeries factor(nmax);
      factor.coeff(0) = 1;
      factor.coeff(n * f.dilation) = -1;
      part = part * factor;
    }
    int k = f.exponent;
    QSeries powed(nmax);
    powed.coeff(0) = 1;
    for (int i = 0; i < std::abs(k); ++i) powed = powed * part;
    if (k < 0) powed = powed.inverse();
    acc = acc * powed;
  }
  if (prefactor_power != 0) {
    QSeries shifted(nmax);
    for (int n = 0; n + prefactor_power <= nmax; ++n) {
      if (n + prefactor_power >= 0) shifted.coeff(n + prefactor_power) = acc.coeff(n);
    }
    acc = shifted;
  }
  return acc;
}

EtaSpec parse_eta_spec(const std::string& text) {
  EtaSpec spec;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "prefactor") {
      ls >> spec.prefactor_power;
    } else {
      EtaFactor f;
      f.dilation = std::stoi(head);
      ls >> f.exponent;
      spec.factors.push_back(f);
    }
  }
  return spec;
}

ProbeReport k3_modularity_probe(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& prime_counts,
    const QSeries& coeffs,
    std::pair<std::uint32_t, std::uint32_t> calibration_primes, int min_validated) {
  if (prime_counts.size() < 4) throw InsufficientPrimes();
  auto count_of = [&](std::uint32_t p) -> std::optional<std::uint64_t> {
    for (auto [q, c] : prime_counts)
      if (q == p) return c;
    return std::nullopt;
  };
  auto [p1, p2] = calibration_primes;
  auto y1c = count_of(p1), y2c = count_of(p2);
  if (!y1c || !y2c) throw std::runtime_error("calibration primes missing from counts");
  for (auto [p, c] : prime_counts)
    if (static_cast<int>(p) > coeffs.truncation()) throw InsufficientPrimes();

  Int a1 = coeffs.coeff(p1), a2 = coeffs.coeff(p2);
  ProbeReport best;
  best.n_validated = -1;
  for (int c2 = 0; c2 <= 2; ++c2) {
    for (int c0 = -4; c0 <= 4; ++c0) {
      // u a1 + c1 p1 = y1;  u a2 + c1 p2 = y2
      mpq_class det = mpq_class(a1) * p2 - mpq_class(a2) * p1;
      if (det == 0) continue;
      mpq_class y1 = mpq_class(static_cast<unsigned long>(*y1c)) -
                     mpq_class(c2) * p1 * p1 - c0;
      mpq_class y2 = mpq_class(static_cast<unsigned long>(*y2c)) -
                     mpq_class(c2) * p2 * p2 - c0;
      mpq_class uq = (y1 * p2 - y2 * p1) / det;
      mpq_class c1q = (mpq_class(a1) * y2 - mpq_class(a2) * y1) / det;
      uq.canonicalize();
      c1q.canonicalize();
      if (uq.get_den() != 1 || c1q.get_den() != 1) continue;
      ProbeRelation rel{uq.get_num(), Int(c2), c1q.get_num(), Int(c0)};
      std::vector<ProbePrimeResult> per;
      int validated = 0;
      for (auto [p, cnt] : prime_counts) {
        ProbePrimeResult r;
        r.p = p;
        r.calibration = (p == p1 || p == p2);
        r.actual = Int(static_cast<unsigned long>(cnt));
        r.expected = rel.u * coeffs.coeff(p) + rel.c2 * p * p + rel.c1 * p + rel.c0;
        r.ok = (r.expected == r.actual);
        if (r.ok && !r.calibration) ++validated;
        per.push_back(r);
      }
      if (validated > best.n_validated) {
        best.n_validated = validated;
        best.relation = rel;
        best.per_prime = per;
      }
    }
  }
  if (best.n_validated < 0) {
    best.n_validated = 0;
    best.consistent_fit = false;
    best.signal = false;
    return best;
  }
  best.consistent_fit = best.n_validated >= min_validated;
  best.signal = best.consistent_fit && best.relation.u != 0;
  return best;
}

}  // namespace feynred
