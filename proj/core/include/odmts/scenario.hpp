#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "odmts/model.hpp"

namespace odmts {

/// Operating conditions for one evaluation run.
struct Scenario {
  std::string name = "baseline";
  double ridership_fraction = 1.0;
  int shuttle_capacity = 4;
  double bus_capacity_scale = 1.0;
  double rail_capacity_scale = 1.0;
  bool bus_enabled = true;
  bool cleaning = false;
  double fare_share = 0.33;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Hourly cost inputs. Fringe amounts are stored as published dollar values
/// (the rate is kept for user-defined models).
struct CostModel {
  double bus_wages = 23.52;
  double bus_fringe = 16.03;
  double bus_maintenance_per_hour = 19.17;
  double bus_price = 625000.0;
  double bus_life_years = 12.0;
  double bus_revenue_hours_per_year = 3878.0;

  double shuttle_wages = 14.42;
  double shuttle_fringe = 9.83;
  double shuttle_maintenance_per_mile = 0.09;
  double shuttle_miles_per_hour = 12.56;
  double shuttle_price = 30000.0;
  double shuttle_life_years = 4.0;
  double shuttle_revenue_hours_per_year = 3878.0;

  double fringe_rate = 0.68;
  double bus_cleaning_per_hour = 3.37;
  double shuttle_cleaning_per_hour = 1.69;
  double opex_share = 0.92;
  double capex_share = 0.08;

  void validate() const;
};

struct HourlyCost {
  double wages = 0.0;
  double fringe = 0.0;
  double maintenance = 0.0;
  double depreciation = 0.0;
  double cleaning = 0.0;

  [[nodiscard]] double total() const { return wages + fringe + maintenance + depreciation + cleaning; }
};

/// Per-vehicle revenue-hour cost of a bus or shuttle. Rail is rejected.
[[nodiscard]] HourlyCost hourly_cost_breakdown(Mode mode, const CostModel& model, bool cleaning);
[[nodiscard]] double vehicle_hourly_cost(Mode mode, const CostModel& model, bool cleaning);

/// (buses * bus rate + shuttles * shuttle rate) * hours.
[[nodiscard]] double system_cost(int buses, int shuttles, double horizon_hours, const CostModel& model,
                                 bool cleaning);

/// Baseline budget scaled by the loss of fare-funded operating expenses.
[[nodiscard]] double scenario_budget(double baseline_budget, double ridership_fraction, double fare_share,
                                     double opex_share = 0.92);

/// Largest shuttle count whose cost, added to the bus cost, fits the budget.
/// Throws DomainError when the buses alone exceed it.
[[nodiscard]] int fit_fleet_to_budget(double budget, double bus_cost, double shuttle_hourly_cost,
                                      double horizon_hours);

/// Passenger-level sampling without replacement. Passengers are drawn per
/// stratum (e.g. bus-involving vs other) so stratum shares are preserved;
/// the total is round(fraction * passengers). Trips are re-aggregated and
/// keep their ids. `strata` may be empty (single stratum).
[[nodiscard]] std::vector<Trip> sample_demand(std::span<const Trip> trips, double fraction, std::uint64_t seed,
                                              std::span<const int> strata = {});

}  // namespace odmts
