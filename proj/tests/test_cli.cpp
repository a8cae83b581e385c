#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "goi/report.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  json report;
};

// Runs the CLI with stderr discarded; stdout must hold one JSON report.
Run run_goi(std::string const& args) {
  std::string cmd = std::string(GOI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
    out.append(buf, n);
  int status = pclose(pipe);
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.report = json::parse(out, nullptr, false);
  return r;
}

std::string corpus(std::string const& rel) {
  return std::string(GOI_CORPUS_DIR) + "/" + rel;
}

fs::path scratch(std::string const& name, std::string const& text) {
  auto p = fs::temp_directory_path() / ("goi_cli_" + std::to_string(getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

void drop_seconds(json& j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [k, v] : j.items())
      drop_seconds(v);
  } else if (j.is_array()) {
    for (auto& v : j)
      drop_seconds(v);
  }
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("check reports the proof shape") {
  auto r = run_goi("check " + corpus("mll/09_cut_chain4.pf"));
  CHECK(r.code == 0);
  CHECK(goi::report_problems(r.report).empty());
  CHECK(r.report["result"]["cuts"] == 4);
  CHECK(r.report["result"]["mll"] == true);
  CHECK(r.report["passed"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run_goi("check " + corpus("bad/syntax_unclosed.pf")).code == 2);
  CHECK(run_goi("check " + corpus("bad/syntax_unknown_rule.pf")).code == 2);
  auto rule = run_goi("check " + corpus("bad/rule_par_same.pf"));
  CHECK(rule.code == 3);
  CHECK(rule.report["result"]["error"]["kind"] == "rule");
  CHECK(rule.report["result"].contains("path"));
  CHECK(run_goi("check /nonexistent/proof.pf").code == 4);
  CHECK(run_goi("verify --suite nonsense").code == 4);
  CHECK(run_goi("interpret " + corpus("mall/01_axiom.pf")).code == 4);
  CHECK(run_goi("interpret " + corpus("mall/06_with.pf") + " --backend goi1").code == 4);
}

TEST_CASE("a basis without the proof's variable is a configuration error") {
  auto basis = scratch("basis.json", R"({"variables": {"Y": {"size": 1,
      "primal": [{"wager": 1.0, "op": {"kind": "diagonal", "values": [0.2]}}],
      "dual": [{"wager": 1.0, "op": {"kind": "diagonal", "values": [0.2]}}]}}})");
  auto r = run_goi("interpret " + corpus("mall/01_axiom.pf") + " " + basis.string());
  CHECK(r.code == 4);
  CHECK(r.report["result"]["variable"] == "X");
  CHECK(r.report["result"]["error"]["kind"] == "configuration");
  fs::remove(basis);
}

TEST_CASE("interpret with both backends") {
  auto g = run_goi("interpret " + corpus("mll/10_principal.pf") + " --backend goi1");
  CHECK(g.code == 0);
  CHECK(g.report["result"]["executed"] == g.report["result"]["normal_form"]);
  auto m = run_goi("interpret " + corpus("mall/12_tensor_with.pf") + " " +
               corpus("basis.json"));
  CHECK(m.code == 0);
  CHECK(goi::report_problems(m.report).empty());
  CHECK(m.report["result"]["backend"] == "matricial");
  CHECK_FALSE(m.report["result"]["witness_table"].empty());
}

TEST_CASE("verify produces a valid passing report") {
  auto out = fs::temp_directory_path() / ("goi_cli_" + std::to_string(getpid()) + ".json");
  auto r = run_goi("verify --suite soundness --out " + out.string());
  CHECK(r.code == 0);
  CHECK(goi::report_problems(r.report).empty());
  CHECK(r.report["schema"] == goi::kReportSchema);
  CHECK(json::parse(std::ifstream(out)) == r.report);
  fs::remove(out);
}

TEST_CASE("an injected mutation is caught with a reproducer") {
  auto r = run_goi("verify --suite coherence --inject-mutation");
  CHECK(r.code == 1);
  CHECK(goi::report_problems(r.report).empty());
  CHECK(r.report["passed"] == false);
  std::size_t failed = 0;
  for (auto const& c : r.report["checks"])
    if (c["status"] == "fail") {
      ++failed;
      CHECK(c["reproducer"].get<std::string>().find("--inject-mutation") !=
            std::string::npos);
    }
  CHECK(failed >= 1);
}

TEST_CASE("reports are deterministic apart from timings") {
  auto a = run_goi("verify --suite identities --seed 0x2a --trials 3");
  auto b = run_goi("verify --suite identities --seed 0x2a --trials 3");
  CHECK(a.code == 0);
  drop_seconds(a.report);
  drop_seconds(b.report);
  CHECK(a.report == b.report);
}

}
