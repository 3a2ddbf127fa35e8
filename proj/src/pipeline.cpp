/* pipeline.cpp */
#include "feynred/pipeline.hpp"

#include <filesystem>
#include <fstream>

#include "feynred/dodgson.hpp"
#include "feynred/serialize.hpp"
#include "feynred/textio.hpp"

namespace feynred {

namespace {

Poly var(int id) { return Poly::variable(id); }

}  // namespace

Poly g8_p_restricted() {
  // a12*(a12 + a13 + a15)*a14 + a13*(a15 + a12)*(a12 + a13)
  Poly a12 = var(12), a13 = var(13), a14 = var(14), a15 = var(15);
  return a12 * (a12 + a13 + a15) * a14 + a13 * (a15 + a12) * (a12 + a13);
}

Poly g8_j() {
  // a^2 b c - a b - a c^2 - a c + b^2 c + a b^2 + a b c^2 - a b c
  Poly a = var(1), b = var(2), c = var(3);
  return a * a * b * c - a * b - a * c * c - a * c + b * b * c + a * b * b +
         a * b * c * c - a * b * c;
}

Poly g8_t() {
  // b (a + c)(a c + b d) - a d (b + c)(c + d)
  Poly a = var(1), b = var(2), c = var(3), d = var(4);
  return b * (a + c) * (a * c + b * d) - a * d * (b + c) * (c + d);
}

const ReductionTrace& g8_reduction_trace() {
  static ReductionTrace tr = [] {
    Graph g = Graph::catalog("g8");
    ReductionEngine engine(g);
    EdgeOrdering order;
    for (int i = 1; i <= 16; ++i) order.push_back(i);
    return engine.run(order);
  }();
  return tr;
}

MinorIdentityCheck check_d11_minor_identity(const Poly& d11, const Poly* d10) {
  Graph g8 = Graph::catalog("g8");
  DodgsonCalc calc(g8);
  auto U = [](std::vector<int> a, std::vector<int> b) {
    for (int x : b) a.push_back(x);
    return a;
  };
  const std::vector<int> ia = {1, 5, 2, 3, 10};   // rows {1,5} + deletions
  const std::vector<int> ja = {7, 8, 2, 3, 10};   // columns {7,8} + deletions
  const std::vector<int> ka = {4, 6, 9};          // contractions of A
  const std::vector<int> db = {2, 3, 5, 7, 8};    // deletions of B
  const std::vector<int> cb = {1, 4, 6, 9, 10};   // contractions of B

  Poly x = calc.dodgson(U(ia, {11}), U(ja, {11}), ka);  // psi^{15,78}(A\11)
  Poly y = calc.dodgson(ia, ja, U(ka, {11}));           // psi^{15,78}(A//11)
  Poly bc = calc.dodgson(db, db, U(cb, {11}));          // psi(B//11)
  Poly bd = calc.dodgson(U(db, {11}), U(db, {11}), cb); // psi(B\11)

  MinorIdentityCheck chk;
  Poly cand = x * bc - y * bd;
  Poly d11n = d11.normalized();
  if (cand == d11n)
    chk.sign = 1;
  else if (cand == -d11n)
    chk.sign = -1;
  chk.ok = chk.sign != 0;
  if (d10) {
    Poly prod = calc.dodgson(ia, ja, ka) * calc.dodgson(db, db, cb);
    Poly d10n = d10->normalized();
    chk.d10_product_ok = (prod == d10n || prod == -d10n);
  }
  chk.detail = chk.ok
                   ? std::string("D_11 = ") + (chk.sign < 0 ? "-" : "+") +
                         "[psi^{15,78}(A\\11) psi(B//11) - psi^{15,78}(A//11) psi(B\\11)]"
                   : "two-minor identity did not match D_11";
  return chk;
}

ChainResult run_substitution_chain(const Poly& d11) {
  ChainResult res;
  res.d_hat = d11.set_var_one(16);

  // triangle polynomial at a16 = 1
  Poly gamma = var(14) * var(15) + var(14) + var(15);
  Poly scaled = res.d_hat.substitute(12, var(12) * gamma).substitute(13, var(13) * gamma);
  // strip the gamma powers that factor out
  while (true) {
    auto q = Poly::exact_div(scaled, gamma);
    if (!q) break;
    scaled = std::move(*q);
    ++res.gamma_powers_removed;
  }
  res.d_tilde = scaled;

  if (res.d_tilde.degree_in(14) > 1 || gamma.degree_in(14) > 1) return res;
  Poly p = resultant_linear(res.d_tilde, gamma, 14).normalized();
  {
    Monomial mc = p.monomial_content();
    if (!mc.is_one()) {
      std::vector<Term> ts;
      for (const auto& t : p.terms()) ts.push_back({*Monomial::divide(t.mon, mc), t.coef});
      p = Poly::from_terms(std::move(ts));
    }
  }
  res.p_resultant = p;

  // a13 -> a13/(a15 + 1), cleared once; the quadratic coefficient of P in
  // a13 carries an (a15 + 1) factor, so one clearing power suffices and the
  // result is a polynomial.
  Poly cp1 = var(15) + Poly::constant(1);
  auto [qa, qb, qc] = decompose_quadratic(p, 13);
  auto qa_div = Poly::exact_div(qa, cp1);
  if (!qa_div) {
    res.q = p;
    res.j_reached = p;
    return res;
  }
  Poly a13 = var(13);
  res.q = *qa_div * a13 * a13 + qb * a13 + qc * cp1;

  // a = a13 + 1, b = a12 + 1, c = a15: rewrite Q in a, b, c (ids 1, 2, 3)
  Poly cand = res.q.substitute(13, var(1) - Poly::constant(1))
                   .substitute(12, var(2) - Poly::constant(1))
                   .substitute(15, var(3));
  res.shifts_used =
      "a13 -> a13/(a15+1) cleared once; a = a13+1, b = a12+1, c = a15";
  Poly jprint = g8_j();
  if (cand == jprint) {
    res.j_reached = cand;
    res.j_sign = 1;
    res.reached_j = true;
  } else if (-cand == jprint) {
    res.j_reached = -cand;
    res.j_sign = -1;
    res.reached_j = true;
  } else {
    res.j_reached = cand;
  }
  return res;
}

G8Report run_g8_pipeline(const std::vector<std::uint32_t>& primes,
                         const QSeries& eta_coeffs, std::uint64_t budget,
                         int n_threads, const std::string& artifact_dir) {
  G8Report rep;
  rep.trace = g8_reduction_trace();
  if (rep.trace.depth() < 11)
    throw std::runtime_error("reduction did not reach D_11");
  rep.d11 = rep.trace.step_poly(11)->value().normalized();

  Poly d10 = rep.trace.step_poly(10)->value();
  rep.minor_identity = check_d11_minor_identity(rep.d11, &d10);

  // restriction at a16 = 0: equals -a14 a15 P up to the global sign
  Poly restricted = rep.d11.set_var_zero(16);
  Poly expect = -(var(14) * var(15) * g8_p_restricted());
  if (restricted == expect) {
    rep.restriction_ok = true;
    rep.global_sign = 1;
  } else if (restricted == -expect) {
    rep.restriction_ok = true;
    rep.global_sign = -1;
  }

  rep.chain = run_substitution_chain(rep.global_sign < 0 ? -rep.d11 : rep.d11);

  Poly j = g8_j(), t = g8_t();
  rep.t_restricts_to_j = (t.set_var_one(4) == j);

  for (std::uint32_t p : primes) {
    rep.j_affine_counts.emplace_back(
        p, count_affine({j}, {1, 2, 3}, p, budget, n_threads));
    rep.t_projective_counts.emplace_back(
        p, count_projective({t}, {1, 2, 3, 4}, p, budget, n_threads));
  }
  if (rep.j_affine_counts.size() >= 4)
    rep.quasipoly = quasipoly_probe(rep.j_affine_counts, 2);
  if (rep.j_affine_counts.size() >= 4 && primes.size() >= 4)
    rep.probe = k3_modularity_probe(rep.j_affine_counts, eta_coeffs,
                                    {primes[0], primes[1]});

  if (!artifact_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(artifact_dir);
    auto put = [&](const std::string& name, const std::string& text) {
      std::ofstream out(artifact_dir + "/" + name);
      out << text;
    };
    for (int m = 1; m <= rep.trace.depth(); ++m) {
      if (rep.trace.steps[m - 1].kind == StepKind::undefined_stop) continue;
      const FactoredPoly* f = rep.trace.step_poly(m);
      std::string text;
      switch (f->form()) {
        case FactoredPoly::plain: text = poly_to_text(f->first()); break;
        case FactoredPoly::product:
          text = "(" + poly_to_text(f->first()) + ") * (" + poly_to_text(f->second()) + ")";
          break;
        case FactoredPoly::square:
          text = "(" + poly_to_text(f->first()) + ")^2";
          break;
      }
      put("D" + std::to_string(m) + ".txt", text + "\n");
    }
    put("P_restricted.txt", poly_to_text(g8_p_restricted()) + "\n");
    put("P_resultant.txt", poly_to_text(rep.chain.p_resultant) + "\n");
    put("Q.txt", poly_to_text(rep.chain.q) + "\n");
    put("J.txt", poly_to_text(g8_j()) + "\n");
    put("T.txt", poly_to_text(g8_t()) + "\n");
    put("trace.json", trace_to_json(rep.trace).dump(2) + "\n");
    put("probe.json", probe_report_to_json(rep.probe).dump(2) + "\n");
  }
  return rep;
}

}  // namespace feynred
