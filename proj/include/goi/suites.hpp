#ifndef GOI_SUITES_HPP
#define GOI_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "goi/random.hpp"

#ifndef GOI_CORPUS_DIR
#define GOI_CORPUS_DIR "corpus"
#endif

namespace goi {

enum class Status { pass, fail, indeterminate };

std::string to_string(Status s);

/// Outcome of one property check.
struct CheckResult {
  std::string name;
  Status status = Status::pass;
  nlohmann::json payload = nlohmann::json::object();
  /// How to rerun a failure: the seed, or the offending input path.
  std::string reproducer;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Overrides every per-check sample count when nonzero.
  std::size_t trials = 0;
  std::string corpus_dir = GOI_CORPUS_DIR;
  /// Flips one weight of the With operator, which must make the With
  /// checks fail.
  bool mutate_with = false;
};

CheckResult check_counterexamples(SuiteOptions const& o);
CheckResult check_group_arithmetic(SuiteOptions const& o);
CheckResult check_fk_determinant(SuiteOptions const& o);
CheckResult check_block_determinant(SuiteOptions const& o);
CheckResult check_adjunction(SuiteOptions const& o);
CheckResult check_ldet_lemmas(SuiteOptions const& o);
CheckResult check_mll_soundness(SuiteOptions const& o);
CheckResult check_mall_soundness(SuiteOptions const& o);
CheckResult check_coherence(SuiteOptions const& o);
CheckResult check_variant_laws(SuiteOptions const& o);
CheckResult check_with_distributivity(SuiteOptions const& o);

/// identities, coherence, soundness or all.
std::vector<std::string> const& suite_names();

/// Throws Error on an unknown suite name.
std::vector<CheckResult> run_suite(std::string const& suite,
                                   SuiteOptions const& o);

/// Sorted paths of the *.goi files in a directory.
std::vector<std::string> corpus_files(std::string const& dir);
std::string read_text(std::string const& path);

} // namespace goi

#endif
