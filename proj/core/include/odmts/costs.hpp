#pragma once

#include "odmts/model.hpp"

namespace odmts {

/// Fixed cost of opening a bus arc: (1 - alpha) * tau[h] * f * c_bus.
/// Throws DomainError for non-bus arcs.
[[nodiscard]] double arc_fixed_cost(const Arc& arc, const DesignParameters& params);

/// Objective contribution of routing the passengers of one trip over an arc.
/// Shuttle: p((1 - alpha) d c_shuttle + alpha tau); bus/rail: p alpha (tau + L / 2f).
[[nodiscard]] double arc_trip_cost(const Arc& arc, int passengers, const DesignParameters& params);
[[nodiscard]] inline double arc_trip_cost(const Arc& arc, const Trip& trip, const DesignParameters& params) {
  return arc_trip_cost(arc, trip.passengers, params);
}

/// Expected wait in seconds for a fixed-route arc (half a headway); zero for shuttles.
[[nodiscard]] double expected_wait_s(const Arc& arc, const DesignParameters& params);

}  // namespace odmts
