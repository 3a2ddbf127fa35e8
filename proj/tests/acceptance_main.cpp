/* acceptance_main.cpp
 *
 * One line per acceptance criterion, each with its own wall-clock budget.
 * Exit status 0 only when every criterion passes inside its budget.
 */
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "feynred/countfp.hpp"
#include "feynred/pipeline.hpp"
#include "feynred/qseries.hpp"
#include "feynred/verify.hpp"

#ifndef FEYNRED_DATA_DIR
#define FEYNRED_DATA_DIR "data"
#endif
#ifndef FEYNRED_GOLDEN_DIR
#define FEYNRED_GOLDEN_DIR "tests/goldens"
#endif

using namespace feynred;

namespace {

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<std::pair<bool, std::string>()> run;
};

VerifyOptions options() {
  VerifyOptions opt;
  opt.full = true;
  opt.budget = kDefaultBudget;
  opt.n_threads = 1;
  opt.data_dir = FEYNRED_DATA_DIR;
  opt.golden_dir = FEYNRED_GOLDEN_DIR;
  return opt;
}

std::pair<bool, std::string> join(std::initializer_list<CheckResult> rs) {
  bool ok = true;
  std::string detail;
  for (const auto& r : rs) {
    ok = ok && r.pass;
    if (!detail.empty()) detail += "; ";
    detail += r.name + (r.pass ? " ok" : " FAILED (" + r.detail + ")");
  }
  return {ok, detail};
}

const G8Report& g8_report() {
  static G8Report rep = [] {
    std::string text;
    {
      std::string path = std::string(FEYNRED_DATA_DIR) + "/eta_weight3.txt";
      FILE* f = std::fopen(path.c_str(), "rb");
      if (f) {
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
        std::fclose(f);
      }
    }
    EtaSpec spec = parse_eta_spec(text);
    QSeries eta = eta_expand(spec.factors, spec.prefactor_power, 40);
    return run_g8_pipeline({2, 3, 5, 7, 11, 13}, eta, kDefaultBudget, 1, "");
  }();
  return rep;
}

}  // namespace

int main() {
  VerifyOptions opt = options();
  std::vector<Criterion> criteria = {
      {1, "determinant-tree equivalence (exhaustive <=6 edges, 300 random <=9)", 60,
       [&] { return join({check_det_tree_exhaustive(), check_det_tree_random300()}); }},
      {2, "identity suite (contraction-deletion, Dodgson identity, 3-valent data)", 60,
       [&] { return join({check_identity_suite(200), check_three_valent_catalog()}); }},
      {3, "reduction structure (forced weight drops, squared minor, five-invariant)", 120,
       [&] {
         return join({check_reduction_structure(50),
                      check_five_invariant_covariance(50, 20),
                      check_five_invariant_vs_trace()});
       }},
      {4, "wheels classify reducible; terminal bidegree (1,1), projective count 2", 300,
       [&] { return join({check_wheels(opt.budget)}); }},
      {5, "16-edge pipeline: D1..D11, two-minor identity, restriction, chain to J", 900,
       [&] {
         const G8Report& rep = g8_report();
         bool ok = rep.trace.depth() >= 11;
         std::string detail = "depth=" + std::to_string(rep.trace.depth());
         for (int m = 1; m <= std::min(11, rep.trace.depth()); ++m) {
           const auto* f = rep.trace.step_poly(m);
           if (!f || f->is_zero()) {
             ok = false;
             detail += "; D_" + std::to_string(m) + " missing";
           }
         }
         ok = ok && rep.minor_identity.ok && rep.minor_identity.d10_product_ok;
         detail += rep.minor_identity.ok ? "; minor identity ok" : "; minor identity FAILED";
         ok = ok && rep.restriction_ok;
         detail += rep.restriction_ok ? "; restriction ok" : "; restriction FAILED";
         ok = ok && rep.chain.reached_j;
         detail += rep.chain.reached_j ? "; chain reached J" : "; chain FAILED";
         ok = ok && rep.t_restricts_to_j;
         detail += rep.t_restricts_to_j ? "; T|d=1 = J" : "; T restriction FAILED";
         return std::make_pair(ok, detail);
       }},
      {6, "Chevalley-Warning congruence on catalog and 20 random graphs", 300,
       [&] { return join({check_cw_suite(opt.budget)}); }},
      {7, "frozen count-shadow congruence validates on wheel(4) and g8 k=5..10", 600,
       [&] { return join({check_count_shadow(opt)}); }},
      {8, "modularity signal: interpolation mismatch and validated probe", 600,
       [&] {
         auto base = join({check_quasipoly_nonpoly(opt), check_modularity_probe(opt)});
         const G8Report& rep = g8_report();
         bool ok = base.first && rep.quasipoly.nonzero_mismatch && rep.probe.signal &&
                   rep.probe.n_validated >= 3;
         return std::make_pair(ok, base.second + "; pipeline probe validated on " +
                                       std::to_string(rep.probe.n_validated) +
                                       " held-out primes");
       }},
      {9, "smoothness containment shadow on wheel(3), wheel(4)", 120,
       [&] { return join({check_smoothness_shadow(opt.budget)}); }},
      {10, "byte-identical reports across thread counts", 600,
       [&] { return join({check_determinism_threads(opt)}); }},
  };

  bool all = true;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::pair<bool, std::string> r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs <= c.budget_seconds;
    bool pass = r.first && in_budget;
    all = all && pass;
    std::printf("[%s] criterion %d: %s (%.1fs%s) %s\n", pass ? "PASS" : "FAIL",
                c.number, c.title.c_str(), secs,
                in_budget ? "" : " OVER BUDGET", r.second.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
