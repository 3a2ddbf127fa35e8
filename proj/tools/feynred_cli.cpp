/* feynred_cli.cpp
 *
 * Command-line surface: psi, dodgson, reduce, classify, count, verify, g8,
 * calibrate-shadow.  Every subcommand honors --format structured.
 */
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "feynred/countfp.hpp"
#include "feynred/dodgson.hpp"
#include "feynred/pipeline.hpp"
#include "feynred/randgraph.hpp"
#include "feynred/reduction.hpp"
#include "feynred/serialize.hpp"
#include "feynred/textio.hpp"
#include "feynred/verify.hpp"

#ifndef FEYNRED_DATA_DIR
#define FEYNRED_DATA_DIR "data"
#endif
#ifndef FEYNRED_GOLDEN_DIR
#define FEYNRED_GOLDEN_DIR "tests/goldens"
#endif

namespace {

using namespace feynred;

struct GraphSource {
  std::string file;
  std::string catalog;
  int n = 0;
  bool two_digit = false;

  Graph load() const {
    if (!catalog.empty() && !file.empty())
      throw CLI::ValidationError("give either --graph or --catalog, not both");
    if (!catalog.empty()) return Graph::catalog(catalog, n);
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw CLI::ValidationError("cannot open " + file);
      std::ostringstream ss;
      ss << in.rdbuf();
      return Graph::build(parse_edge_list(ss.str(), two_digit));
    }
    throw CLI::ValidationError("no graph source given");
  }
};

std::vector<int> parse_ids(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

std::vector<std::uint32_t> parse_primes(const std::string& csv) {
  std::vector<std::uint32_t> out;
  for (int v : parse_ids(csv)) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

std::uint64_t env_budget() {
  const char* e = std::getenv("FEYNRED_BUDGET");
  if (!e) return kDefaultBudget;
  return std::strtoull(e, nullptr, 10);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact graph-polynomial and denominator-reduction engine"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "text | structured")
      ->check(CLI::IsMember({"text", "structured"}));
  std::uint64_t budget = env_budget();
  app.add_option("--budget", budget, "evaluation budget for counting");
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for counting");
  std::string data_dir = FEYNRED_DATA_DIR;
  app.add_option("--data-dir", data_dir, "directory with eta spec and calibration");

  GraphSource src;
  auto add_graph_opts = [&](CLI::App* cmd) {
    cmd->add_option("--graph", src.file, "edge-list file, one 'u v' per line");
    cmd->add_flag("--two-digit", src.two_digit,
                  "edge-list tokens are two digits naming both endpoints");
    cmd->add_option("--catalog", src.catalog, "wheel | cycle | g8");
    cmd->add_option("--n", src.n, "catalog parameter");
  };

  auto* cmd_psi = app.add_subcommand("psi", "print the graph polynomial");
  add_graph_opts(cmd_psi);

  auto* cmd_dodgson = app.add_subcommand("dodgson", "print a Dodgson minor");
  add_graph_opts(cmd_dodgson);
  std::string iset, jset, kset;
  cmd_dodgson->add_option("--i", iset, "comma-separated edge ids");
  cmd_dodgson->add_option("--j", jset, "comma-separated edge ids");
  cmd_dodgson->add_option("--k", kset, "comma-separated edge ids");

  auto* cmd_reduce = app.add_subcommand("reduce", "run the denominator reduction");
  add_graph_opts(cmd_reduce);
  std::string order_csv;
  cmd_reduce->add_option("--order", order_csv, "elimination order, comma separated");

  auto* cmd_classify = app.add_subcommand("classify", "search elimination orderings");
  add_graph_opts(cmd_classify);
  long long search_budget = 20000;
  cmd_classify->add_option("--budget,--budget-states", search_budget,
                           "search state budget");

  auto* cmd_count = app.add_subcommand("count", "count points of the graph hypersurface");
  add_graph_opts(cmd_count);
  std::string primes_csv = "2,3,5";
  cmd_count->add_option("--primes", primes_csv, "comma-separated primes");
  bool projective = true;
  cmd_count->add_flag("!--affine", projective, "count the affine cone instead");

  auto* cmd_verify = app.add_subcommand("verify", "run the invariant suites");
  std::string level = "quick";
  cmd_verify->add_option("--level", level, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}));
  std::string golden_dir = FEYNRED_GOLDEN_DIR;
  cmd_verify->add_option("--goldens", golden_dir, "golden directory");
  bool write_goldens = false;
  cmd_verify->add_flag("--write-goldens", write_goldens, "regenerate golden files");
  bool show_time = false;
  cmd_verify->add_flag("--time", show_time, "append per-check timings");

  auto* cmd_g8 = app.add_subcommand("g8", "full pipeline on the 16-edge catalog graph");
  std::string g8_primes = "2,3,5,7,11,13";
  cmd_g8->add_option("--primes", g8_primes, "comma-separated primes");
  std::string out_dir;
  cmd_g8->add_option("--out", out_dir, "artifact directory");

  auto* cmd_cal = app.add_subcommand("calibrate-shadow",
                                     "fit the count-shadow correction on wheel(3)");
  std::string cal_out;
  cmd_cal->add_option("--out", cal_out, "output file (default: print)");

  auto* cmd_eta = app.add_subcommand("eta", "expand the configured eta quotient");
  int eta_nmax = 40;
  cmd_eta->add_option("--nmax", eta_nmax, "truncation order");
  std::string eta_file;
  cmd_eta->add_option("--spec", eta_file, "explicit spec file");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (cmd_psi->parsed()) {
      Graph g = src.load();
      Poly p = psi(g);
      if (format == "structured") {
        OrderedJson j;
        j["type"] = "psi";
        j["n_edges"] = g.n_edges_active();
        j["loops"] = g.loop_number();
        j["terms"] = p.n_terms();
        j["poly"] = poly_to_text(p);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << poly_to_text(p) << "\n";
      }
      return 0;
    }
    if (cmd_dodgson->parsed()) {
      Graph g = src.load();
      DodgsonCalc calc(g);
      Poly p = calc.dodgson(parse_ids(iset), parse_ids(jset), parse_ids(kset));
      if (format == "structured") {
        OrderedJson j;
        j["type"] = "dodgson";
        j["i"] = parse_ids(iset);
        j["j"] = parse_ids(jset);
        j["k"] = parse_ids(kset);
        j["poly"] = poly_to_text(p);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << poly_to_text(p) << "\n";
      }
      return 0;
    }
    if (cmd_reduce->parsed()) {
      Graph g = src.load();
      ReductionEngine engine(g);
      EdgeOrdering order = parse_ids(order_csv);
      if (order.empty()) order = g.active_edge_ids();
      ReductionTrace tr = engine.run(order);
      std::cout << (format == "structured" ? trace_to_json(tr).dump(2) + "\n"
                                           : trace_to_text(tr));
      return 0;
    }
    if (cmd_classify->parsed()) {
      Graph g = src.load();
      Classification c = classify(g, search_budget);
      int n = g.n_edges_active(), h = g.loop_number();
      std::string label =
          (n == 2 * h && n >= 5) ? predict_weight(c, g) : std::string();
      if (format == "structured") {
        OrderedJson j = classification_to_json(c);
        if (!label.empty()) j["weight_label"] = label;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << classification_to_text(c);
        if (!label.empty()) std::cout << "predicted weight: " << label << "\n";
      }
      return 0;
    }
    if (cmd_count->parsed()) {
      Graph g = src.load();
      Poly p = psi(g);
      auto vars = g.active_edge_ids();
      OrderedJson rows = OrderedJson::array();
      for (std::uint32_t pr : parse_primes(primes_csv)) {
        std::uint64_t c = projective
                              ? count_projective({p}, vars, pr, budget, threads)
                              : count_affine({p}, vars, pr, budget, threads);
        if (format == "structured") {
          OrderedJson row;
          row["p"] = pr;
          row["count"] = c;
          rows.push_back(row);
        } else {
          std::cout << "p=" << pr << " count=" << c << "\n";
        }
      }
      if (format == "structured") {
        OrderedJson j;
        j["type"] = projective ? "projective-counts" : "affine-counts";
        j["rows"] = rows;
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
    if (cmd_verify->parsed()) {
      VerifyOptions opt;
      opt.full = (level == "full");
      opt.budget = budget;
      opt.n_threads = threads;
      opt.data_dir = data_dir;
      opt.golden_dir = golden_dir;
      opt.write_goldens = write_goldens;
      auto results = run_verify(opt);
      std::cout << verify_report_text(results);
      if (show_time) {
        for (const auto& r : results)
          std::cout << "# " << r.name << ": " << r.seconds << " s\n";
      }
      bool all = true;
      for (const auto& r : results) all = all && r.pass;
      return all ? 0 : 1;
    }
    if (cmd_g8->parsed()) {
      auto primes = parse_primes(g8_primes);
      int nmax = 40;
      for (std::uint32_t p : primes) nmax = std::max<int>(nmax, static_cast<int>(p));
      QSeries eta;
      {
        std::ifstream in(data_dir + "/eta_weight3.txt");
        std::ostringstream ss;
        ss << in.rdbuf();
        EtaSpec spec = parse_eta_spec(ss.str());
        eta = eta_expand(spec.factors, spec.prefactor_power, nmax);
      }
      G8Report rep = run_g8_pipeline(primes, eta, budget, threads, out_dir);
      if (format == "structured") {
        OrderedJson j;
        j["type"] = "g8-pipeline";
        j["depth"] = rep.trace.depth();
        j["d11_terms"] = rep.d11.n_terms();
        j["minor_identity"] = rep.minor_identity.ok;
        j["minor_identity_detail"] = rep.minor_identity.detail;
        j["restriction_ok"] = rep.restriction_ok;
        j["reached_j"] = rep.chain.reached_j;
        j["t_restricts_to_j"] = rep.t_restricts_to_j;
        OrderedJson counts = OrderedJson::array();
        for (auto [p, c] : rep.j_affine_counts) {
          OrderedJson row;
          row["p"] = p;
          row["affine_J"] = c;
          counts.push_back(row);
        }
        j["j_counts"] = counts;
        j["quasipoly_mismatch"] = rep.quasipoly.nonzero_mismatch;
        j["probe"] = probe_report_to_json(rep.probe);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "depth: " << rep.trace.depth() << "\n";
        std::cout << "D_11 terms: " << rep.d11.n_terms() << "\n";
        std::cout << "minor identity: " << (rep.minor_identity.ok ? "ok" : "FAIL")
                  << "  " << rep.minor_identity.detail << "\n";
        std::cout << "restriction at a16=0: " << (rep.restriction_ok ? "ok" : "FAIL")
                  << "\n";
        std::cout << "chain reached J: " << (rep.chain.reached_j ? "yes" : "NO")
                  << " (" << rep.chain.shifts_used << ")\n";
        std::cout << "T|_{d=1} = J: " << (rep.t_restricts_to_j ? "ok" : "FAIL") << "\n";
        for (auto [p, c] : rep.j_affine_counts)
          std::cout << "|V(J)(F_" << p << ")| = " << c << "\n";
        std::cout << "interpolation mismatch: "
                  << (rep.quasipoly.nonzero_mismatch ? "nonzero (not polynomial)"
                                                     : "ZERO")
                  << "\n";
        std::cout << probe_report_to_text(rep.probe);
      }
      bool ok = rep.minor_identity.ok && rep.restriction_ok && rep.chain.reached_j &&
                rep.t_restricts_to_j && rep.quasipoly.nonzero_mismatch &&
                rep.probe.signal;
      return ok ? 0 : 1;
    }
    if (cmd_eta->parsed()) {
      std::string path = eta_file.empty() ? data_dir + "/eta_weight3.txt" : eta_file;
      std::ifstream in(path);
      if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return 1;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      EtaSpec spec = parse_eta_spec(ss.str());
      QSeries s = eta_expand(spec.factors, spec.prefactor_power, eta_nmax);
      std::cout << "n,a_n\n";
      for (int n = 0; n <= s.truncation(); ++n)
        std::cout << n << "," << s.coeff(n).get_str() << "\n";
      return 0;
    }
    if (cmd_cal->parsed()) {
      Graph w3 = Graph::catalog("wheel", 3);
      ReductionEngine e3(w3);
      Classification c3 = classify(w3, 2000000);
      ReductionTrace t3 = e3.run(c3.witness);
      auto cal = calibrate_shadow({&t3}, {2, 3, 5}, budget);
      if (!cal) {
        std::cerr << "no consistent calibration found\n";
        return 1;
      }
      std::ostringstream os;
      os << "# count-shadow correction r(p) = r0 + r1*p, fitted once on wheel(3)\n";
      os << "# and frozen; c_{k+1} = -c_k + r(p) mod p for consecutive defined\n";
      os << "# denominators at positions k >= 5\n";
      os << "r0 " << cal->r0 << "\n";
      os << "r1 " << cal->r1 << "\n";
      if (cal_out.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream out(cal_out);
        out << os.str();
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
