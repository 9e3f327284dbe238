#pragma once

#include <filesystem>
#include <string>

#include "commands.hpp"

namespace odmts::cli {

// Serializers return the full file content so callers and tests can
// compare bytes. Column names and keys carry units.

[[nodiscard]] std::string design_json(const NetworkModel& network, const DesignSolution& design,
                                      const DesignParameters& params);
/// Open bus arcs from design.json, as a design vector over bus_arcs().
[[nodiscard]] std::vector<double> read_design_z(const std::filesystem::path& path, const NetworkModel& network);
[[nodiscard]] std::string benders_trace_csv(const DesignSolution& design);
[[nodiscard]] std::string diagnostics_json(const OdDiagnostics& diag);

[[nodiscard]] std::string routes_json(const NetworkModel& network, const RidesharePlan& plan);
[[nodiscard]] std::string fleet_json(const RidesharePlan& plan, const FleetPlan& fleet);
[[nodiscard]] std::string report_json(const NetworkModel& network, const ScenarioOutcome& outcome);
[[nodiscard]] std::string passengers_csv(const NetworkModel& network, const SimulationReport& report);
[[nodiscard]] std::string occupancy_csv(const NetworkModel& network, const SimulationReport& report);
[[nodiscard]] std::string dispatch_log_csv(const SimulationReport& report);
[[nodiscard]] std::string roadusage_geojson(const NetworkModel& network, const ScenarioOutcome& outcome);
[[nodiscard]] std::string budget_report_json(const BudgetReport& budget);

/// Writes every per-scenario artifact into `dir`.
void write_scenario_outputs(const std::filesystem::path& dir, const NetworkModel& network,
                            const ScenarioOutcome& outcome);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace odmts::cli
