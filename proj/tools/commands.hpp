#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catfm/io.hpp"

namespace catfm::cli {

struct Options {
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

enum ExitCode : int { kSuccess = 0, kMathFailure = 1, kInputError = 2, kBudgetExceeded = 3 };

/// Exit status for an error escaping a command.
int exit_code_for(ErrorKind kind);

struct Report {
  std::string command;
  Json verdict;
  /// path → SHA-256 hex digest of every input file read
  std::map<std::string, std::string> inputs;
  double timing_ms = 0.0;
  int exit_code = kSuccess;
  std::vector<std::string> narration;

  /// Canonical JSON; keys are sorted. `with_timing` = false drops the only
  /// non-deterministic field.
  Json to_json(bool with_timing = true) const;
};

std::string sha256_hex(const std::string& bytes);

Report cmd_validate(const std::vector<std::string>& paths, const Options& opt);
Report cmd_prompt(const std::string& category_path, const std::string& task_path, const Options& opt);
Report cmd_finetune(const std::string& category_path, const std::string& task_path, const Options& opt);
Report cmd_chain(const std::string& chain_path, const Options& opt);
Report cmd_demo(const std::string& name, const Options& opt);

/// Human-readable rendering for --format text.
std::string render_text(const Report& r);

}  // namespace catfm::cli
