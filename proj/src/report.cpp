#include "ocat/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocat {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skipped") return Status::skipped;
  throw std::invalid_argument("unknown status '" + s + "'");
}

void CheckReport::set(const std::string& id, Status s) {
  for (auto& [name, st] : checks) {
    if (name != id) continue;
    if (s == Status::fail || (s == Status::pass && st == Status::skipped)) st = s;
    return;
  }
  checks.emplace_back(id, s);
}

void CheckReport::fail(const std::string& id, std::string message, std::vector<std::string> witnesses) {
  set(id, Status::fail);
  auto count = std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.check == id; });
  if (static_cast<std::size_t>(count) < kMaxFindingsPerCheck)
    findings.push_back({id, std::move(message), std::move(witnesses)});
}

void CheckReport::fact(const std::string& key, std::string value) {
  for (auto& [k, v] : facts)
    if (k == key) {
      v = std::move(value);
      return;
    }
  facts.emplace_back(key, std::move(value));
}

Status CheckReport::status(const std::string& id) const {
  for (const auto& [name, st] : checks)
    if (name == id) return st;
  return Status::skipped;
}

bool CheckReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.second == Status::fail; });
}

std::vector<std::string> CheckReport::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& [name, st] : checks)
    if (st == Status::fail) out.push_back(name);
  return out;
}

std::string CheckReport::fact_value(const std::string& key) const {
  for (const auto& [k, v] : facts)
    if (k == key) return v;
  return {};
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const auto& [name, st] : other.checks) set(prefix + name, st);
  for (const auto& f : other.findings) findings.push_back({prefix + f.check, f.message, f.witnesses});
  for (const auto& [k, v] : other.facts) fact(prefix + k, v);
}

}  // namespace ocat
