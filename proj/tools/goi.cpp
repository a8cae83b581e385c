// goi: check, interpret and verify proofs against the operator models.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "goi/interpret.hpp"
#include "goi/report.hpp"
#include "goi/suites.hpp"
#include "goi/witness.hpp"

using namespace goi;
using nlohmann::json;

namespace {

enum Exit { ok = 0, property = 1, syntax = 2, rule = 3, config = 4 };

// Unreadable or malformed inputs other than the proof text itself.
struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto as_config(F&& f) {
  try {
    return f();
  } catch (ParseError const&) {
    throw;
  } catch (MissingVariableError const&) {
    throw;
  } catch (std::exception const& e) {
    throw ConfigFailure(e.what());
  }
}

std::string word_term(WordTerm const& t) {
  std::string s = (t.target.empty() ? "1" : t.target.letters()) + " " +
                  (t.source.empty() ? "1" : t.source.letters()) + "*";
  if (t.weight != cplx(1.0))
    s += " x(" + std::to_string(t.weight.real()) + "," +
         std::to_string(t.weight.imag()) + ")";
  return s;
}

json term_list(PartialInjectionOp const& u) {
  json out = json::array();
  PartialInjectionOp r = u.reduced();
  for (auto const& t : r.terms())
    out.push_back(word_term(t));
  return out;
}

std::size_t support_size(DialectalOperator const& a) {
  if (a.symbolic())
    return a.table().support_size();
  std::size_t n = 0;
  DenseOperator d = a.dense();
  for (auto const& e : d.entries())
    n += std::abs(e) > tau_num();
  return n;
}

CheckResult verdict(std::string name, bool pass, std::string reproducer) {
  CheckResult c;
  c.name = std::move(name);
  c.status = pass ? Status::pass : Status::fail;
  c.reproducer = std::move(reproducer);
  return c;
}

json interpret_goi1(ProofPtr const& p, Report& report, std::string const& path) {
  auto g = interpret_mll_goi1(*p);
  SoundnessResult s = soundness_check_mll(p);
  json addresses = json::object();
  for (auto const& [k, w] : g.address)
    addresses[std::to_string(k.first) + "." + std::to_string(k.second)] =
        w.empty() ? std::string("1") : w.letters();
  report.checks.push_back(
      verdict("soundness", s.equal, "goi interpret " + path + " --backend goi1"));
  return json{{"backend", "goi1"},
              {"conclusion", sequent_string(p->conclusion)},
              {"cuts", cut_count(*p)},
              {"depth", depth(*p)},
              {"addresses", addresses},
              {"proof_support", term_list(g.pi)},
              {"cut_support", term_list(g.sigma)},
              {"nilpotency_degree", s.nilpotency_degree},
              {"executed", term_list(s.executed)},
              {"normal_form", term_list(s.expected)}};
}

json interpret_matricial(ProofPtr const& p, InterpretationBasis const& basis,
                         Report& report, std::string const& repro) {
  auto m = interpret_mall_matricial(*p, basis);
  Project const& a = m.project;
  PromisingReport pr = is_promising(a);
  auto dual = sequent_dual_witnesses(p->conclusion, m.plan, basis);
  auto rows = orthogonal_witness_suite(a, dual);

  json atoms = json::object();
  for (auto const& [k, locs] : m.plan.atoms)
    atoms[std::to_string(k.first) + "." + std::to_string(k.second)] = locs;
  json table = json::array();
  bool all_orthogonal = true;
  for (auto const& r : rows) {
    table.push_back({{"witness", r.id},
                     {"sca", measure_json(r.sca)},
                     {"orthogonal", r.orthogonal},
                     {"suspicious", r.suspicious}});
    all_orthogonal = all_orthogonal && r.orthogonal;
  }
  auto promising = verdict("promising", pr.all(), repro);
  promising.payload = {{"dialect", pr.dialect},   {"pseudo_trace", pr.pseudo_trace},
                       {"wager", pr.wager},       {"symmetry", pr.symmetry},
                       {"traces", pr.traces},     {"detail", pr.detail}};
  report.checks.push_back(promising);
  auto orth = verdict("witness orthogonality", all_orthogonal, repro);
  orth.payload = {{"witnesses", rows.size()}};
  report.checks.push_back(orth);
  return json{{"backend", "matricial"},
              {"conclusion", sequent_string(p->conclusion)},
              {"carrier", a.carrier()},
              {"atoms", atoms},
              {"dialect", a.dialect().blocks()},
              {"trace", a.trace().weights},
              {"wager", number_json(a.wager)},
              {"symbolic", a.op.symbolic()},
              {"support_size", support_size(a.op)},
              {"cuts", m.cuts.size()},
              {"witness_table", table}};
}

int emit(Report const& report, std::string const& out_path) {
  std::string text = report_json(report).dump(2);
  std::cout << text << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "goi: cannot write " << out_path << "\n";
      return config;
    }
    out << text << "\n";
  }
  return report.failed() ? property : ok;
}

int error_exit(Report& report, int code, std::string const& kind,
               std::string const& what, std::string const& out_path) {
  std::cerr << "goi: " << what << "\n";
  report.result["error"] = {{"kind", kind}, {"message", what}};
  int e = emit(report, out_path);
  return e == config ? config : code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of interaction interpreter and property checker"};
  app.require_subcommand(1);

  std::string proof_path, basis_path, backend = "matricial", out_path;
  std::string suite = "all", seed_text = "0xC0FFEE", corpus = GOI_CORPUS_DIR;
  std::size_t trials = 0;
  bool mutate = false;

  auto* check = app.add_subcommand("check", "Parse and rule-check a proof file");
  check->add_option("proof", proof_path, "Proof file")->required();
  check->add_option("--out", out_path, "Also write the report here");

  auto* interp = app.add_subcommand("interpret", "Interpret a proof");
  interp->add_option("proof", proof_path, "Proof file")->required();
  interp->add_option("basis", basis_path, "Interpretation basis (JSON)");
  interp->add_option("--backend", backend, "goi1 or matricial")
      ->check(CLI::IsMember({"goi1", "matricial"}));
  interp->add_option("--out", out_path, "Also write the report here");

  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suite, "identities, coherence, soundness or all")
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", seed_text, "64-bit seed (decimal or 0x hex)");
  verify->add_option("--trials", trials, "Samples per randomized check");
  verify->add_option("--corpus", corpus, "Corpus directory");
  verify->add_option("--out", out_path, "Also write the report here");
  verify->add_flag("--inject-mutation", mutate,
                   "Flip one weight of the With operator (self-test)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? ok : config;
  }

  Report report;
  for (int i = 1; i < argc; ++i)
    report.command.emplace_back(argv[i]);

  try {
    if (*check) {
      auto p = parse_proof(as_config([&] { return read_text(proof_path); }));
      report.result = {{"conclusion", sequent_string(p->conclusion)},
                       {"mll", is_mll(*p)},
                       {"cut_free", is_cut_free(*p)},
                       {"cuts", cut_count(*p)},
                       {"depth", depth(*p)}};
      return emit(report, out_path);
    }
    if (*interp) {
      auto p = parse_proof(as_config([&] { return read_text(proof_path); }));
      if (backend == "goi1") {
        report.result = interpret_goi1(p, report, proof_path);
      } else {
        if (basis_path.empty())
          return error_exit(report, config, "configuration",
                            "the matricial backend needs a basis file", out_path);
        auto basis = as_config([&] { return load_basis_file(basis_path); });
        report.result = interpret_matricial(
            p, basis, report,
            "goi interpret " + proof_path + " " + basis_path + " --backend matricial");
      }
      return emit(report, out_path);
    }
    if (*verify) {
      SuiteOptions o;
      try {
        o.seed = std::stoull(seed_text, nullptr, 0);
      } catch (std::exception const&) {
        return error_exit(report, config, "configuration", "bad seed " + seed_text,
                          out_path);
      }
      o.trials = trials;
      o.corpus_dir = corpus;
      o.mutate_with = mutate;
      report.checks = run_suite(suite, o);
      report.result = {{"suite", suite}, {"seed", seed_text}, {"trials", trials}};
      return emit(report, out_path);
    }
  } catch (ParseError const& e) {
    report.result["line"] = e.line;
    report.result["column"] = e.column;
    return error_exit(report, syntax, "syntax", e.what(), out_path);
  } catch (RuleError const& e) {
    report.result["rule"] = e.rule;
    report.result["path"] = e.path;
    return error_exit(report, rule, "rule", e.what(), out_path);
  } catch (MissingVariableError const& e) {
    report.result["variable"] = e.variable;
    return error_exit(report, config, "configuration", e.what(), out_path);
  } catch (ConfigFailure const& e) {
    return error_exit(report, config, "configuration", e.what(), out_path);
  } catch (UnsupportedRuleError const& e) {
    return error_exit(report, config, "configuration", e.what(), out_path);
  } catch (std::exception const& e) {
    return error_exit(report, property, "failure", e.what(), out_path);
  }
  return ok;
}
