#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odmts/ids.hpp"

namespace odmts {

inline constexpr double kSecondsPerHour = 3600.0;

[[nodiscard]] constexpr double hours(double seconds) { return seconds / kSecondsPerHour; }
[[nodiscard]] constexpr double seconds_from_hours(double h) { return h * kSecondsPerHour; }

enum class Mode { Shuttle, Bus, Rail };

[[nodiscard]] std::string_view to_string(Mode mode);
[[nodiscard]] std::optional<Mode> parse_mode(std::string_view text);

/// Membership of a rail station in a line; `position` orders stations along it.
struct RailMembership {
  std::string line;
  int position = 0;
};

struct Location {
  LocationId id;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  bool is_hub = false;
  bool is_rail_station = false;
  std::vector<RailMembership> rail_lines;
};

struct Arc {
  ArcId id;
  LocationId origin;
  LocationId dest;
  Mode mode = Mode::Shuttle;
  int frequency = 0;  // vehicles over the horizon; 0 for shuttle arcs
  double travel_time_s = 0.0;
  double distance_mi = 0.0;

  [[nodiscard]] bool is_fixed_route() const { return mode != Mode::Shuttle; }
};

struct Trip {
  TripId id;
  std::string name;
  LocationId origin;
  LocationId dest;
  int passengers = 1;
  double request_time_s = 0.0;
};

/// Weights and constants of the design objective. Times are seconds,
/// money is dollars; cost formulas convert to hours internally.
struct DesignParameters {
  double alpha = 7.25 / 8.25;
  double horizon_s = 4 * kSecondsPerHour;
  double extended_horizon_s = 6 * kSecondsPerHour;
  int transfer_limit = 4;
  double bus_cost_per_hour = 72.15;
  double rail_cost_per_hour = 0.0;  // reporting only, never part of the budget
  double shuttle_cost_per_hour = 27.31;
  double shuttle_cost_per_mile = 1.0;

  /// Throws DomainError when a field is outside its admissible range.
  void validate() const;
};

/// alpha such that alpha / (1 - alpha) equals the value of time in $/hour.
[[nodiscard]] double alpha_from_value_of_time(double dollars_per_hour);

}  // namespace odmts
