#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "subzeta/support.hpp"
#include "subzeta/system.hpp"
#include "subzeta/variety.hpp"

namespace subzeta::cli {

// Malformed specification file: maps to exit code 1.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SupportSpec {
  Support::Kind kind = Support::Kind::UnitPolydisc;
  unsigned level = 0;
  std::vector<std::vector<u64>> centers;
};

struct RegularizationSpec {
  unsigned s = 1;
  unsigned chi_level = 0;
  unsigned chi_index = 0;
  unsigned r_min = 0;
  unsigned r_max = 4;
  unsigned scan_depth = 9;
};

struct ProblemSpec {
  int schema = 1;
  u64 p = 0;
  unsigned n = 0;
  std::vector<std::string> constraints;
  std::string target;
  SupportSpec support;
  unsigned max_level = 8;
  unsigned conductor_cap = 2;
  std::vector<ResolutionDatum> resolution_data;
  u64 budget = kDefaultBudget;
  std::optional<RegularizationSpec> regularization;
};

ProblemSpec parse_spec(const nlohmann::json& doc);
ProblemSpec load_spec(const std::string& path);

// Both throw SpecError with the offending polynomial named in the message.
PolySystem build_system(const ProblemSpec& spec);
Support build_support(const ProblemSpec& spec);

}  // namespace subzeta::cli
