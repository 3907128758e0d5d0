#pragma once
// JSON form of check reports and of the CLI's output document.
//
// Document schema (version 1), keys in this order:
//   tool, schema, version, command: [argv...], verdict: "pass" | "fail",
//   reports: [{subject, passed, checks: [{id, status}], findings: [{check,
//   message, witnesses}], facts: [{key, value}]}], data: {...}

#include <string>
#include <vector>

#include <json.hpp>

#include "ocat/report.hpp"

namespace ocat {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "ocat";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

Json report_to_json(const CheckReport& r);
// Throws std::invalid_argument on a malformed document.
CheckReport report_from_json(const Json& j);

struct Document {
  std::vector<std::string> command;
  std::vector<CheckReport> reports;
  Json data = Json::object();
  // Verdicts can be forced negative by commands whose answer is "no" even
  // though every check ran cleanly (for instance a failed equivalence query).
  bool negative = false;
  bool passed() const;
  friend bool operator==(const Document&, const Document&) = default;
};

Json document_to_json(const Document& d);
Document document_from_json(const Json& j);
// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace ocat
