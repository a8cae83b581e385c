// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>

#include "goi/suites.hpp"

using namespace goi;

int main() {
  SuiteOptions o;
  struct Row {
    int id;
    CheckResult (*run)(SuiteOptions const&);
  };
  Row const rows[] = {
      {1, check_counterexamples}, {2, check_group_arithmetic},
      {3, check_fk_determinant},  {4, check_block_determinant},
      {5, check_adjunction},      {6, check_ldet_lemmas},
      {7, check_mll_soundness},   {8, check_mall_soundness},
      {9, check_coherence},       {10, check_variant_laws},
  };
  int failed = 0;
  for (auto const& row : rows) {
    CheckResult r = row.run(o);
    bool pass = r.status == Status::pass;
    failed += !pass;
    std::printf("criterion %d: %s (%s, %.6f s)\n", row.id, pass ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds);
    if (!pass)
      std::printf("  %s\n  reproduce: %s\n", r.payload.dump().c_str(),
                  r.reproducer.c_str());
  }
  return failed == 0 ? 0 : 1;
}
