#pragma once

#include <memory>
#include <string>
#include <vector>

#include "odmts/model.hpp"
#include "odmts/network.hpp"
#include "odmts/travel_matrix.hpp"

namespace odmts::testing {

inline Location make_location(std::string name, double lat, double lon, bool hub = false, bool rail = false,
                              std::vector<RailMembership> lines = {}) {
  Location loc;
  loc.name = std::move(name);
  loc.lat = lat;
  loc.lon = lon;
  loc.is_hub = hub || rail;
  loc.is_rail_station = rail;
  loc.rail_lines = std::move(lines);
  return loc;
}

inline std::vector<Location> with_ids(std::vector<Location> locations) {
  for (std::size_t i = 0; i < locations.size(); ++i) locations[i].id = LocationId(i);
  return locations;
}

inline Trip make_trip(int id, LocationId o, LocationId d, int passengers = 1, double t = 0.0) {
  Trip trip;
  trip.id = TripId(id);
  trip.name = "t" + std::to_string(id);
  trip.origin = o;
  trip.dest = d;
  trip.passengers = passengers;
  trip.request_time_s = t;
  return trip;
}

/// Matrix from coordinates at 20 mph with 1.3 circuity.
inline std::shared_ptr<const TravelMatrix> coordinate_matrix(const std::vector<Location>& locations) {
  return std::make_shared<const TravelMatrix>(TravelMatrix::from_coordinates(with_ids(locations), 20.0, 1.3));
}

}  // namespace odmts::testing
