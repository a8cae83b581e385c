#include "goi/report.hpp"

#include <cmath>

namespace goi {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
  case Status::pass:
    return "pass";
  case Status::fail:
    return "fail";
  case Status::indeterminate:
    return "indeterminate";
  }
  return "?";
}

json number_json(double x) {
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  return x;
}

json measure_json(Measure const& m) {
  switch (m.kind) {
  case Measure::Kind::finite:
    return number_json(m.value);
  case Measure::Kind::infinite:
    return "inf";
  case Measure::Kind::indeterminate:
    return "indeterminate";
  }
  return nullptr;
}

json check_json(CheckResult const& r) {
  json j{{"name", r.name},
         {"status", to_string(r.status)},
         {"seconds", number_json(r.seconds)},
         {"payload", r.payload}};
  if (r.status == Status::fail)
    j["reproducer"] = r.reproducer;
  return j;
}

bool Report::failed() const {
  for (auto const& c : checks)
    if (c.status == Status::fail)
      return true;
  return false;
}

json report_json(Report const& r) {
  json checks = json::array();
  for (auto const& c : r.checks)
    checks.push_back(check_json(c));
  return json{{"schema", kReportSchema},
              {"command", r.command},
              {"checks", checks},
              {"result", r.result},
              {"passed", !r.failed()}};
}

std::vector<std::string> report_problems(json const& j) {
  std::vector<std::string> out;
  if (!j.is_object())
    return {"report is not an object"};
  if (!j.contains("schema") || j["schema"] != kReportSchema)
    out.push_back("schema tag missing or unknown");
  if (!j.contains("command") || !j["command"].is_array())
    out.push_back("command echo missing");
  if (!j.contains("passed") || !j["passed"].is_boolean())
    out.push_back("passed flag missing");
  if (!j.contains("result") || !j["result"].is_object())
    out.push_back("result missing");
  if (!j.contains("checks") || !j["checks"].is_array())
    return out.push_back("checks missing"), out;
  for (auto const& c : j["checks"]) {
    std::string name = c.value("name", std::string("?"));
    if (!c.contains("name") || !c["name"].is_string())
      out.push_back("check without a name");
    auto s = c.value("status", std::string());
    if (s != "pass" && s != "fail" && s != "indeterminate")
      out.push_back(name + ": bad status");
    if (!c.contains("payload") || !c["payload"].is_object())
      out.push_back(name + ": payload missing");
    if (s == "fail" && (!c.contains("reproducer") || !c["reproducer"].is_string() ||
                        c["reproducer"].get<std::string>().empty()))
      out.push_back(name + ": failure without reproducer");
  }
  return out;
}

} // namespace goi
