#pragma once
// Command dispatch for the `ocat` executable, kept in a library so tests can
// drive it in-process.

#include <string>
#include <vector>

namespace ocat::cli {

enum ExitCode : int { kPass = 0, kNegative = 1, kInputError = 2 };

struct Outcome {
  int code = kInputError;
  std::string out;  // the JSON report, or DSL text for `print`
  std::string err;  // human summary and diagnostics
};

// `args` excludes the program name.
Outcome run(const std::vector<std::string>& args);

// Writes the example corpus below `dir` together with manifest.json, which
// lists every corpus command line and its expected exit code. Returns the
// relative paths written, in order.
std::vector<std::string> export_corpus(const std::string& dir);

}  // namespace ocat::cli
