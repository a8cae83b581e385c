#ifndef GOI_REPORT_HPP
#define GOI_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "goi/measurement.hpp"
#include "goi/suites.hpp"

namespace goi {

inline constexpr char const* kReportSchema = "goi-report/1";

/// Finite doubles as numbers, everything else as the strings "inf", "-inf"
/// and "nan".
nlohmann::json number_json(double x);
/// A number, "inf", or "indeterminate".
nlohmann::json measure_json(Measure const& m);

nlohmann::json check_json(CheckResult const& r);

struct Report {
  /// argv as typed, program name excluded.
  std::vector<std::string> command;
  std::vector<CheckResult> checks;
  /// Command-specific content.
  nlohmann::json result = nlohmann::json::object();

  bool failed() const;
};

nlohmann::json report_json(Report const& r);

/// Structural problems of a serialized report; empty when it is valid.
std::vector<std::string> report_problems(nlohmann::json const& j);

} // namespace goi

#endif
