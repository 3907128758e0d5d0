#pragma once
// Uniform result record shared by every checker. Order of checks, findings and
// facts is the order of insertion, which every checker keeps deterministic.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ocat {

enum class Status { pass, fail, skipped };
const char* to_string(Status s);
Status status_from_string(const std::string& s);

struct Finding {
  std::string check;                  // id of the check that produced it
  std::string message;
  std::vector<std::string> witnesses;  // cell names or other identifiers
  friend bool operator==(const Finding&, const Finding&) = default;
};

struct CheckReport {
  std::string subject;
  std::vector<std::pair<std::string, Status>> checks;
  std::vector<Finding> findings;
  std::vector<std::pair<std::string, std::string>> facts;

  // Registers a check. A later call for the same id can only downgrade it.
  void set(const std::string& id, Status s);
  void pass(const std::string& id) { set(id, Status::pass); }
  void skip(const std::string& id) { set(id, Status::skipped); }
  // Records a failure of `id` together with a finding. Findings per check are
  // capped so reports of badly broken inputs stay readable.
  void fail(const std::string& id, std::string message, std::vector<std::string> witnesses = {});
  void fact(const std::string& key, std::string value);

  Status status(const std::string& id) const;
  bool passed() const;  // no check failed
  std::vector<std::string> failed_checks() const;
  std::string fact_value(const std::string& key) const;  // empty if absent
  // Appends all checks/findings/facts of `other`, prefixing ids.
  void merge(const CheckReport& other, const std::string& prefix);

  static constexpr std::size_t kMaxFindingsPerCheck = 16;

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

}  // namespace ocat
