#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subzeta/arith.hpp"

namespace subzeta::cli {

enum ExitCode : int { kOk = 0, kSchema = 1, kBudget = 2, kVerification = 3 };

struct RunOptions {
  std::string spec_path;
  std::string out_dir = ".";
  std::optional<unsigned> max_level;
  unsigned workers = 1;
  std::optional<u64> budget;
  u64 seed = 20240601;
};

const std::vector<std::string>& command_names();

// Runs one command, writing artifacts under out_dir and a summary to `log`.
// Errors are reported on `err` and mapped to an exit code.
int run(const std::string& command, const RunOptions& options, std::ostream& log, std::ostream& err);

}  // namespace subzeta::cli
