#include "cellab/config.hpp"

#include "cellab/errors.hpp"

#include <algorithm>
#include <fstream>

namespace cellab {

namespace {

struct TolField {
  const char* name;
  double Tolerances::*member;
};

constexpr TolField kTolFields[] = {
    {"sym", &Tolerances::sym},         {"unitary", &Tolerances::unitary}, {"spec", &Tolerances::spec},
    {"det", &Tolerances::det},         {"roundtrip", &Tolerances::roundtrip}, {"eig", &Tolerances::eig},
    {"gap", &Tolerances::gap},         {"tie", &Tolerances::tie},         {"jitter", &Tolerances::jitter},
    {"anchor", &Tolerances::anchor},   {"membership", &Tolerances::membership},
};

}  // namespace

void validate(const RunConfig& config) {
  if (config.grid_size < 17) throw ArgumentError("config: grid_size must be at least 17");
  for (const auto& f : kTolFields)
    if (!(config.tol.*f.member > 0)) throw ArgumentError(std::string("config: tolerance ") + f.name + " must be positive");
  if (config.format != "json" && config.format != "csv") throw ArgumentError("config: format must be json or csv");
  if (config.jobs == 0) throw ArgumentError("config: jobs must be at least 1");
  if (config.dense_limit == 0) throw ArgumentError("config: dense_limit must be positive");
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig base) {
  if (!j.is_object()) throw ParseError("config: top level must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "grid_size") {
        base.grid_size = value.get<std::size_t>();
      } else if (key == "dense_limit") {
        base.dense_limit = value.get<std::size_t>();
      } else if (key == "format") {
        base.format = value.get<std::string>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "jobs") {
        base.jobs = value.get<unsigned>();
      } else if (key == "tolerances") {
        if (!value.is_object()) throw ParseError("config: tolerances must be an object");
        for (const auto& [name, v] : value.items()) {
          const auto* field = std::find_if(std::begin(kTolFields), std::end(kTolFields),
                                           [&](const TolField& f) { return name == f.name; });
          if (field == std::end(kTolFields)) throw ParseError("config: unknown tolerance '" + name + "'");
          base.tol.*field->member = v.get<double>();
        }
      } else {
        throw ParseError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config: " + path + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& f : kTolFields) tol[f.name] = config.tol.*f.member;
  return {{"grid_size", config.grid_size}, {"dense_limit", config.dense_limit}, {"format", config.format},
          {"seed", config.seed},           {"jobs", config.jobs},               {"tolerances", tol}};
}

}  // namespace cellab
