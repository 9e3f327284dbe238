#include "odmts/costs.hpp"

#include "odmts/errors.hpp"

namespace odmts {

double arc_fixed_cost(const Arc& arc, const DesignParameters& params) {
  if (arc.mode != Mode::Bus) throw DomainError("fixed cost is only defined for bus arcs");
  return (1.0 - params.alpha) * hours(arc.travel_time_s) * arc.frequency * params.bus_cost_per_hour;
}

double expected_wait_s(const Arc& arc, const DesignParameters& params) {
  if (arc.mode == Mode::Shuttle) return 0.0;
  return params.horizon_s / (2.0 * arc.frequency);
}

double arc_trip_cost(const Arc& arc, int passengers, const DesignParameters& params) {
  const double p = passengers;
  if (arc.mode == Mode::Shuttle) {
    return p * ((1.0 - params.alpha) * arc.distance_mi * params.shuttle_cost_per_mile +
                params.alpha * hours(arc.travel_time_s));
  }
  return p * params.alpha * hours(arc.travel_time_s + expected_wait_s(arc, params));
}

}  // namespace odmts
