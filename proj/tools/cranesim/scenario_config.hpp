// Scenario configuration files (JSON, versioned schema).
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cranesim/simulation_engine.hpp"
#include "cranesim/swing_damping_controller.hpp"
#include "cranesim/types.hpp"

namespace cranesim::scenario {

inline constexpr int kSchemaVersion = 1;

/// Validation failure; `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ScenarioConfig {
  std::string name;
  std::string notes;
  std::string paper_fidelity = "partial";  // "full" or "partial"
  CraneParameters crane;
  control::ControllerGains gains;
  control::Reference reference;
  sim::SimulationConfig simulation;
  std::vector<std::string> warnings;  // non-fatal notes (gust outside default envelope, ...)
};

/// Validates against the schema; unknown keys are rejected.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioConfig& cfg);

}  // namespace cranesim::scenario
