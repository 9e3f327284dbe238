#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "odmts/io.hpp"

namespace odmts::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kSolverFailure = 3, kServiceFailure = 4 };

struct CostSummary {
  double hours = 0.0;
  int buses = 0;
  int shuttles = 0;
  double bus_rate = 0.0;      // $/h per vehicle
  double shuttle_rate = 0.0;  // $/h per vehicle
  double bus_usd = 0.0;
  double shuttle_usd = 0.0;
  [[nodiscard]] double total_usd() const { return bus_usd + shuttle_usd; }
};

struct BudgetReport {
  std::string scenario;
  double baseline_budget = 0.0;
  double ridership_fraction = 1.0;
  double fare_share = 0.0;
  double opex_share = 0.0;
  double budget = 0.0;
  double system_cost = 0.0;
  double bus_cost = 0.0;
  double shuttle_rate = 0.0;
  double hours = 0.0;
  int fleet = 0;
  std::optional<int> max_fleet_within_budget;  // empty when buses alone exceed it
  [[nodiscard]] bool within_budget() const { return system_cost <= budget + 1e-9; }
};

/// Everything one scenario evaluation produces.
struct ScenarioOutcome {
  ScenarioConfig config;
  bool redesigned = false;
  int passengers = 0;
  std::vector<Trip> trips;
  DesignSolution design;
  DesignParameters params;
  std::optional<double> measured_cost_per_mile;
  RidesharePlan rideshare;
  FleetPlan fleet;
  int initial_fleet = 0;
  AutoscaleResult autoscale;
  /// Fleet cut to the budget after autoscaling (report is for the cut fleet).
  bool budget_limited = false;
  CostSummary cost;
  BudgetReport budget;
};

/// Loaded inputs shared by the design and evaluate stages.
struct Inputs {
  std::vector<Location> locations;
  std::unique_ptr<LocationIndex> index;
  std::shared_ptr<const TravelMatrix> road;
  std::vector<Trip> trips;
  std::shared_ptr<const NetworkModel> network;
};

[[nodiscard]] Inputs load_inputs(const PipelineConfig& config);

[[nodiscard]] std::vector<Transaction> read_transactions(const std::filesystem::path& path, const LocationIndex& index);
[[nodiscard]] std::vector<ApcRecord> read_apc(const std::filesystem::path& path, const LocationIndex& index);

[[nodiscard]] CostSummary cost_summary(int buses, int shuttles, double horizon_s, const CostModel& model,
                                       bool cleaning);
[[nodiscard]] BudgetReport budget_report(const std::string& name, double baseline, const Scenario& scenario,
                                         const CostSummary& cost, const CostModel& model);

/// Design with the given parameters, or without buses when disabled.
[[nodiscard]] DesignSolution design_for(const NetworkModel& network, std::span<const Trip> trips,
                                        const DesignParameters& params, bool buses, const BendersOptions& options);

/// Sample demand, pick the design (fixed or redesigned), size the fleet,
/// autoscale it in simulation and price the result.
[[nodiscard]] ScenarioOutcome evaluate_scenario(const PipelineConfig& config, const Inputs& inputs,
                                                const DesignSolution& baseline_design, const ScenarioConfig& scenario,
                                                bool redesign, std::optional<double> baseline_budget);

// Subcommands. Each writes its artifacts and returns an exit code.
int run_estimate(const PipelineConfig& config);
int run_design(const PipelineConfig& config);
int run_evaluate(const PipelineConfig& config, bool redesign, const std::optional<std::filesystem::path>& design_file,
                 const std::optional<int>& fleet_override);
int run_cost(const CostModel& model, int buses, int shuttles, double hours, bool cleaning);
int run_budget(const CostModel& model, double baseline, double fraction, double fare_share, std::optional<double> bus_cost,
               double hours, bool cleaning);

}  // namespace odmts::cli
