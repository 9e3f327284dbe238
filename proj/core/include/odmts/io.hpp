#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "odmts/model.hpp"
#include "odmts/network.hpp"
#include "odmts/travel_matrix.hpp"

namespace odmts {

/// locations.csv: id, lat, lon, is_hub, is_rail_station[, rail_line].
/// rail_line lists `line:position` memberships separated by ';'; a bare
/// line name takes the next position in file order.
[[nodiscard]] std::vector<Location> read_locations(const std::string& path);
[[nodiscard]] std::vector<Location> parse_locations(std::istream& in, const std::string& source);
void write_locations(std::ostream& out, std::span<const Location> locations);

/// Resolves location names to ids (the order of `locations`).
class LocationIndex {
 public:
  explicit LocationIndex(std::span<const Location> locations);
  [[nodiscard]] LocationId at(const std::string& name, const std::string& context) const;
  [[nodiscard]] const std::string& name(LocationId id) const { return names_.at(id.index()); }
  [[nodiscard]] std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LocationId> ids_;
};

/// trips.csv: id, origin, dest, passengers, request_time_s.
[[nodiscard]] std::vector<Trip> read_trips(const std::string& path, const LocationIndex& index);
[[nodiscard]] std::vector<Trip> parse_trips(std::istream& in, const std::string& source, const LocationIndex& index);
void write_trips(std::ostream& out, std::span<const Trip> trips, const LocationIndex& index);

/// Matrix file: origin, dest, seconds, miles.
[[nodiscard]] TravelMatrix read_matrix(const std::string& path, const LocationIndex& index);
[[nodiscard]] TravelMatrix parse_matrix(std::istream& in, const std::string& source, const LocationIndex& index);
void write_matrix(std::ostream& out, const TravelMatrix& matrix, const LocationIndex& index);

}  // namespace odmts
