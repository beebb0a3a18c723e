#pragma once

// Run configuration shared by the CLI and the acceptance runner.

#include "cellab/numerics.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace cellab {

struct RunConfig {
  std::size_t grid_size = 2049;
  Tolerances tol;
  std::size_t dense_limit = 64;
  std::string format = "json";  // json | csv
  std::uint64_t seed = 20180723;
  unsigned jobs = 1;
};

/// Throws ArgumentError on grid_size < 17, non-positive tolerances, unknown format or jobs == 0.
void validate(const RunConfig& config);

/// Missing keys keep their defaults; unknown keys are rejected (ParseError).
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
nlohmann::json to_json(const RunConfig& config);

}  // namespace cellab
