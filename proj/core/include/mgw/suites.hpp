#pragma once

#include <string>
#include <vector>

#include "mgw/config.hpp"
#include "mgw/report.hpp"

namespace mgw {

enum ExitCode { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2, kExitResourceGuard = 3 };

struct CheckSpec {
  std::string id;
  std::string paper_ref;  // the identity the check measures
  double tolerance = 0.0;
  Bound bound = Bound::Upper;
  int criterion = 0;      // acceptance criterion the check belongs to
  bool known_deviation = false;
};

struct SuiteInfo {
  std::string name;
  std::vector<CheckSpec> checks;
};

const std::vector<SuiteInfo>& suite_catalog();
const CheckSpec* find_check(const std::string& id);

// unknown suites and tolerance ids are config errors raised before any computation;
// an empty suite list selects every suite
Report run_suite(const RunConfig& cfg);
Report run_suites(const RunConfig& cfg, const std::vector<std::string>& names);

int exit_code(const Report& r);

}  // namespace mgw
