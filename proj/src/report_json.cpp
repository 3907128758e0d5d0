#include "ocat/report_json.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocat {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

const Json& array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw std::invalid_argument(std::string("field '") + key + "' is not an array");
  return v;
}

}  // namespace

Json report_to_json(const CheckReport& r) {
  Json j;
  j["subject"] = r.subject;
  j["passed"] = r.passed();
  j["checks"] = Json::array();
  for (const auto& [id, st] : r.checks) j["checks"].push_back({{"id", id}, {"status", to_string(st)}});
  j["findings"] = Json::array();
  for (const auto& f : r.findings)
    j["findings"].push_back({{"check", f.check}, {"message", f.message}, {"witnesses", f.witnesses}});
  j["facts"] = Json::array();
  for (const auto& [k, v] : r.facts) j["facts"].push_back({{"key", k}, {"value", v}});
  return j;
}

CheckReport report_from_json(const Json& j) {
  CheckReport r;
  r.subject = text(j, "subject");
  for (const auto& c : array(j, "checks")) r.checks.emplace_back(text(c, "id"), status_from_string(text(c, "status")));
  for (const auto& f : array(j, "findings")) {
    Finding out{text(f, "check"), text(f, "message"), {}};
    for (const auto& w : array(f, "witnesses")) {
      if (!w.is_string()) throw std::invalid_argument("witness is not a string");
      out.witnesses.push_back(w.get<std::string>());
    }
    r.findings.push_back(std::move(out));
  }
  for (const auto& f : array(j, "facts")) r.facts.emplace_back(text(f, "key"), text(f, "value"));
  const Json& p = field(j, "passed");
  if (!p.is_boolean() || p.get<bool>() != r.passed())
    throw std::invalid_argument("field 'passed' disagrees with the checks");
  return r;
}

bool Document::passed() const {
  return !negative && std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed(); });
}

Json document_to_json(const Document& d) {
  Json j;
  j["tool"] = kToolName;
  j["schema"] = kReportSchema;
  j["version"] = kToolVersion;
  j["command"] = d.command;
  j["verdict"] = d.passed() ? "pass" : "fail";
  j["reports"] = Json::array();
  for (const auto& r : d.reports) j["reports"].push_back(report_to_json(r));
  j["data"] = d.data;
  return j;
}

Document document_from_json(const Json& j) {
  if (text(j, "tool") != kToolName) throw std::invalid_argument("not an ocat report");
  const Json& schema = field(j, "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kReportSchema)
    throw std::invalid_argument("unsupported report schema");
  Document d;
  for (const auto& c : array(j, "command")) {
    if (!c.is_string()) throw std::invalid_argument("command entry is not a string");
    d.command.push_back(c.get<std::string>());
  }
  for (const auto& r : array(j, "reports")) d.reports.push_back(report_from_json(r));
  d.data = field(j, "data");
  const std::string verdict = text(j, "verdict");
  if (verdict != "pass" && verdict != "fail") throw std::invalid_argument("verdict must be pass or fail");
  const bool checks_ok = std::all_of(d.reports.begin(), d.reports.end(), [](const CheckReport& r) { return r.passed(); });
  if (verdict == "pass" && !checks_ok) throw std::invalid_argument("verdict 'pass' with failing checks");
  d.negative = verdict == "fail" && checks_ok;
  return d;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ocat
