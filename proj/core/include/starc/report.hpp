#pragma once

#include <string>
#include <vector>

namespace starc {

struct CheckRecord {
  std::string check_name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int points_evaluated = 0;
  double wall_time = 0.0;  // seconds
  std::string error;       // nonempty when the check aborted
};

struct Report {
  std::string scenario_name;
  std::string scenario_echo;  // canonical JSON of the configuration
  std::string tool_version;
  std::vector<CheckRecord> checks;

  bool all_passed() const;
};

// Aligned human-readable table.
std::string emit_report_text(const Report& report);

// Stable-key JSON: keys sorted, floats printed with 17 significant digits.
// Identical configuration and seed yield byte-identical output except for
// the wall_time fields.
std::string emit_report_json(const Report& report);

}  // namespace starc
