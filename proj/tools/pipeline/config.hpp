#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "odmts/benders.hpp"
#include "odmts/dispatch.hpp"
#include "odmts/model.hpp"
#include "odmts/network.hpp"
#include "odmts/od_estimation.hpp"
#include "odmts/rideshare.hpp"
#include "odmts/scenario.hpp"
#include "odmts/simulator.hpp"

namespace odmts::cli {

struct ScenarioConfig {
  Scenario scenario;
  /// Initial fleet; when absent the fleet-sizing result is used.
  std::optional<int> fleet;
  /// Shrink the fleet to the largest one the scenario budget affords.
  bool fit_budget = false;
};

struct PipelineConfig {
  std::filesystem::path base_dir;  // relative paths resolve here

  std::filesystem::path locations;
  std::filesystem::path matrix;
  std::optional<std::filesystem::path> rail_matrix;
  std::filesystem::path trips;
  std::filesystem::path transactions;
  std::filesystem::path apc;
  std::filesystem::path output_dir = "out";

  DesignParameters params;
  NetworkOptions network;
  BendersOptions benders;
  RideshareOptions rideshare;
  SimulationOptions simulation;
  CostModel cost;
  OdOptions od;
  /// Budget of the baseline system in dollars for the horizon; when absent
  /// the cost of the first scenario is used.
  std::optional<double> baseline_budget;
  int max_escalations = 10;
  std::vector<ScenarioConfig> scenarios;

  [[nodiscard]] std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// Defaults for every field, one baseline scenario.
[[nodiscard]] PipelineConfig default_config();

/// Reads a JSON config; unknown keys are rejected so typos surface early.
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);
[[nodiscard]] PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace odmts::cli
