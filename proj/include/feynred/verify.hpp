/* verify.hpp
 *
 * The invariant suites behind `verify --level quick|full` and the acceptance
 * runner.  Each check returns one deterministic report line; timings are
 * kept separate so reports can be byte-compared across runs.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace feynred {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool full = false;
  std::uint64_t budget = 1000000000ull;
  int n_threads = 1;
  std::string data_dir;     // eta spec + shadow calibration
  std::string golden_dir;   // reference traces
  bool write_goldens = false;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

// stable report text: one line per check, no timings
std::string verify_report_text(const std::vector<CheckResult>& results);

// individual suites (shared by the acceptance runner)
CheckResult check_det_tree_exhaustive();
CheckResult check_det_tree_random300();
CheckResult check_identity_suite(int instances);
CheckResult check_three_valent_catalog();
CheckResult check_reduction_structure(int n_graphs);
CheckResult check_five_invariant_covariance(int n_graphs, int n_perms);
CheckResult check_five_invariant_vs_trace();
CheckResult check_wheels(std::uint64_t budget);
CheckResult check_ring_axioms_and_sqrt();
CheckResult check_wheel_trace_golden(int n, const VerifyOptions& opt);
CheckResult check_g8_prefix_golden(const VerifyOptions& opt);
CheckResult check_cw_suite(std::uint64_t budget);
CheckResult check_count_shadow(const VerifyOptions& opt);
CheckResult check_quasipoly_nonpoly(const VerifyOptions& opt);
CheckResult check_modularity_probe(const VerifyOptions& opt);
CheckResult check_smoothness_shadow(std::uint64_t budget);
CheckResult check_determinism_threads(const VerifyOptions& opt);

}  // namespace feynred
