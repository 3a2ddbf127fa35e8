/* reduction.hpp
 *
 * Denominator reduction: starting from D_0 = psi^2, eliminate one variable
 * per step.  A step on D viewed as A x^2 + B x + C takes the discriminant
 * B^2 - 4AC: zero means a weight drop with D' = B/2, a nonzero perfect
 * square R^2 means a generic step with D' = R, anything else stops the
 * reduction.  Denominators are carried in factored form (square / product /
 * plain) so the early structural steps never expand psi^2.
 */
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "feynred/dodgson.hpp"
#include "feynred/graph.hpp"
#include "feynred/poly.hpp"

namespace feynred {

enum class StepKind { generic, weight_drop, zero, undefined_stop };
const char* step_kind_name(StepKind k);

// D_m kept with whatever factorization the step produced.
class FactoredPoly {
 public:
  enum Form { plain, product, square };
  static FactoredPoly make_plain(Poly p);
  static FactoredPoly make_product(Poly u, Poly v);  // factors normalized
  static FactoredPoly make_square(Poly r);           // root normalized

  Form form() const { return form_; }
  const Poly& first() const { return a_; }
  const Poly& second() const { return b_; }
  const Poly& value() const;  // expanded, cached
  bool is_zero() const;
  int degree_in(int var) const;
  int total_degree() const;

 private:
  Form form_ = plain;
  Poly a_, b_;
  mutable std::shared_ptr<Poly> expanded_;
};

struct ReductionStep {
  int var = 0;
  StepKind kind = StepKind::undefined_stop;
  FactoredPoly d;
};

enum class TraceStatus { exhausted, zero, undefined, running };
const char* trace_status_name(TraceStatus s);

struct ReductionTrace {
  EdgeOrdering ordering;       // as requested
  Poly psi;                    // D_0 = psi^2
  std::vector<ReductionStep> steps;
  TraceStatus status = TraceStatus::running;
  int n_edges = 0;             // N of the graph

  int depth() const { return static_cast<int>(steps.size()); }
  // D_m for m = 0..depth(); m = 0 is psi^2
  Poly d(int m) const;
  const FactoredPoly* step_poly(int m) const;  // m >= 1
};

// One spec-level reduction step on an explicit polynomial.
ReductionStep reduce_step(const Poly& d, int var);

class ReductionEngine {
 public:
  explicit ReductionEngine(const Graph& g);

  ReductionTrace run(const EdgeOrdering& order);
  Poly five_invariant(const std::vector<int>& edges5);

  DodgsonCalc& calc() { return *calc_; }

  // One structure-aware step; graph-aware shortcuts apply at depths 1..3
  // where the factorization is forced by the Dodgson identity.
  std::pair<StepKind, FactoredPoly> step(const FactoredPoly& d, int var,
                                         const std::vector<int>& eliminated);

 private:
  Graph g_;
  std::shared_ptr<DodgsonCalc> calc_;
  std::pair<StepKind, FactoredPoly> step_plain(const Poly& d, int var);
  bool spot_check_identity(const Poly& u, const Poly& v, int var, const Poly& s);
};

struct BudgetExhausted {};  // flag, not an exception

struct Classification {
  enum class Verdict { denominator_reducible, weight_drop, stuck };
  Verdict verdict = Verdict::stuck;
  bool reducible = false;
  bool weight_drop_seen = false;   // square or zero at m >= 4
  int stuck_depth = 0;             // deepest defined D_m over the search
  EdgeOrdering witness;            // completing ordering when reducible
  EdgeOrdering weight_drop_witness;
  bool budget_exhausted = false;
  long long states_visited = 0;
  std::vector<std::string> anomalies;  // zero at m <= 3, recorded verbatim
  std::string verdict_name() const;
};

Classification classify(const Graph& g, long long search_budget = 20000);

struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& m) : std::runtime_error(m) {}
};

// Weight bookkeeping labels; no cohomology is computed.
std::string predict_weight(const Classification& c, const Graph& g);

}  // namespace feynred
