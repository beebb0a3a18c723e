#pragma once

// Acceptance suites.  Each primary criterion is one CriterionResult; the CLI
// and the acceptance test binary both run these.

#include "cellab/config.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace cellab {

struct CriterionResult {
  std::string id;       // suite name, e.g. "finite-cel"
  std::string title;
  bool pass = false;
  std::string summary;  // one deterministic line of measured values
  nlohmann::json measured;
  double seconds = 0.0;  // wall time; not part of deterministic output
  double time_limit = 0.0;  // 0 = none
};

/// "finite-cel", "chi", "tower", "jiang-su", "properties", "oracle".
const std::vector<std::string>& acceptance_suites();

/// Runs one suite or "all" (criteria run on up to config.jobs threads; results
/// keep suite order).  Throws ArgumentError for an unknown suite.
std::vector<CriterionResult> run_acceptance(const std::string& suite, const RunConfig& config);

bool all_passed(const std::vector<CriterionResult>& results);

/// "PASS finite-cel: ..." per criterion.
std::string format_text(const std::vector<CriterionResult>& results);
nlohmann::json to_json(const std::vector<CriterionResult>& results);
std::string format_csv(const std::vector<CriterionResult>& results);

}  // namespace cellab
