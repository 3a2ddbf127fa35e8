/* serialize.cpp */
#include "feynred/serialize.hpp"

#include <sstream>

#include "feynred/textio.hpp"

namespace feynred {

namespace {

OrderedJson factored_to_json(const FactoredPoly& f) {
  OrderedJson j;
  switch (f.form()) {
    case FactoredPoly::plain:
      j["form"] = "plain";
      j["poly"] = poly_to_text(f.first());
      break;
    case FactoredPoly::product:
      j["form"] = "product";
      j["factor1"] = poly_to_text(f.first());
      j["factor2"] = poly_to_text(f.second());
      break;
    case FactoredPoly::square:
      j["form"] = "square";
      j["root"] = poly_to_text(f.first());
      break;
  }
  j["terms"] = f.is_zero() ? 0 : f.value().n_terms();
  j["degree"] = f.total_degree();
  return j;
}

std::string factored_to_text(const FactoredPoly& f) {
  switch (f.form()) {
    case FactoredPoly::plain:
      return poly_to_text(f.first());
    case FactoredPoly::product:
      return "(" + poly_to_text(f.first()) + ") * (" + poly_to_text(f.second()) + ")";
    case FactoredPoly::square:
      return "(" + poly_to_text(f.first()) + ")^2";
  }
  return "0";
}

}  // namespace

OrderedJson trace_to_json(const ReductionTrace& t) {
  OrderedJson j;
  j["type"] = "reduction-trace";
  j["n_edges"] = t.n_edges;
  j["ordering"] = t.ordering;
  j["psi"] = poly_to_text(t.psi);
  j["status"] = trace_status_name(t.status);
  OrderedJson steps = OrderedJson::array();
  int m = 0;
  for (const auto& st : t.steps) {
    ++m;
    OrderedJson s;
    s["m"] = m;
    s["eliminated"] = st.var;
    s["kind"] = step_kind_name(st.kind);
    s["d"] = factored_to_json(st.d);
    steps.push_back(s);
  }
  j["steps"] = steps;
  return j;
}

std::string trace_to_text(const ReductionTrace& t) {
  std::ostringstream os;
  os << "reduction trace\n";
  os << "  n_edges: " << t.n_edges << "\n";
  os << "  ordering:";
  for (int v : t.ordering) os << " " << v;
  os << "\n  psi: " << poly_to_text(t.psi) << "\n";
  os << "  status: " << trace_status_name(t.status) << "\n";
  int m = 0;
  for (const auto& st : t.steps) {
    ++m;
    os << "  D_" << m << " (eliminate a" << st.var << ", " << step_kind_name(st.kind)
       << "): " << factored_to_text(st.d) << "\n";
  }
  return os.str();
}

OrderedJson classification_to_json(const Classification& c) {
  OrderedJson j;
  j["type"] = "classification";
  j["verdict"] = c.verdict_name();
  j["reducible"] = c.reducible;
  j["weight_drop_seen"] = c.weight_drop_seen;
  j["stuck_depth"] = c.stuck_depth;
  j["witness"] = c.witness;
  j["weight_drop_witness"] = c.weight_drop_witness;
  j["budget_exhausted"] = c.budget_exhausted;
  j["states_visited"] = c.states_visited;
  j["anomalies"] = c.anomalies;
  return j;
}

std::string classification_to_text(const Classification& c) {
  std::ostringstream os;
  os << "classification: " << c.verdict_name() << "\n";
  os << "  reducible: " << (c.reducible ? "yes" : "no") << "\n";
  os << "  weight drop seen: " << (c.weight_drop_seen ? "yes" : "no") << "\n";
  os << "  deepest defined: " << c.stuck_depth << "\n";
  if (!c.witness.empty()) {
    os << "  witness:";
    for (int v : c.witness) os << " " << v;
    os << "\n";
  }
  if (c.budget_exhausted) os << "  (search budget exhausted)\n";
  for (const auto& a : c.anomalies) os << "  anomaly: " << a << "\n";
  return os.str();
}

OrderedJson count_report_to_json(const CountReport& r) {
  OrderedJson j;
  j["type"] = "count-report";
  j["description"] = r.description;
  j["all_ok"] = r.all_ok;
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : r.rows) {
    OrderedJson x;
    x["k"] = row.k;
    x["p"] = row.p;
    x["count_k"] = row.count_k;
    x["count_k1"] = row.count_k1;
    x["lhs"] = row.lhs;
    x["rhs"] = row.rhs;
    x["ok"] = row.ok;
    rows.push_back(x);
  }
  j["rows"] = rows;
  return j;
}

std::string count_report_to_text(const CountReport& r) {
  std::ostringstream os;
  os << r.description << (r.all_ok ? " [ok]" : " [FAIL]") << "\n";
  for (const auto& row : r.rows)
    os << "  k=" << row.k << " p=" << row.p << " |V(D_k)|=" << row.count_k
       << " |V(D_{k+1})|=" << row.count_k1 << " lhs=" << row.lhs
       << " rhs=" << row.rhs << (row.ok ? " ok" : " FAIL") << "\n";
  return os.str();
}

OrderedJson probe_report_to_json(const ProbeReport& r) {
  OrderedJson j;
  j["type"] = "modularity-probe";
  j["consistent_fit"] = r.consistent_fit;
  j["signal"] = r.signal;
  j["u"] = r.relation.u.get_str();
  j["c2"] = r.relation.c2.get_str();
  j["c1"] = r.relation.c1.get_str();
  j["c0"] = r.relation.c0.get_str();
  j["n_validated"] = r.n_validated;
  OrderedJson per = OrderedJson::array();
  for (const auto& x : r.per_prime) {
    OrderedJson e;
    e["p"] = x.p;
    e["calibration"] = x.calibration;
    e["ok"] = x.ok;
    e["expected"] = x.expected.get_str();
    e["actual"] = x.actual.get_str();
    per.push_back(e);
  }
  j["per_prime"] = per;
  return j;
}

std::string probe_report_to_text(const ProbeReport& r) {
  std::ostringstream os;
  os << "modularity probe: "
     << (r.consistent_fit ? (r.signal ? "signal" : "fit with u=0") : "no consistent fit")
     << "\n";
  os << "  count(p) = " << r.relation.u.get_str() << "*a_p + "
     << r.relation.c2.get_str() << "*p^2 + " << r.relation.c1.get_str() << "*p + "
     << r.relation.c0.get_str() << "\n";
  os << "  validated on " << r.n_validated << " held-out primes\n";
  for (const auto& x : r.per_prime)
    os << "  p=" << x.p << (x.calibration ? " (cal)" : "")
       << " expected=" << x.expected.get_str() << " actual=" << x.actual.get_str()
       << (x.ok ? " ok" : " FAIL") << "\n";
  return os.str();
}

}  // namespace feynred
