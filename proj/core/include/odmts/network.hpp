#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "odmts/model.hpp"
#include "odmts/travel_matrix.hpp"

namespace odmts {

/// Directed multigraph of locations and mode/frequency arcs.
/// Immutable once built; share it read-only between workers.
class NetworkModel {
 public:
  NetworkModel(std::vector<Location> locations, std::vector<Arc> arcs, std::vector<int> bus_frequencies,
               std::vector<int> rail_frequencies, std::shared_ptr<const TravelMatrix> road);

  [[nodiscard]] std::span<const Location> locations() const { return locations_; }
  [[nodiscard]] std::span<const Arc> arcs() const { return arcs_; }
  [[nodiscard]] const Location& location(LocationId id) const { return locations_.at(id.index()); }
  [[nodiscard]] const Arc& arc(ArcId id) const { return arcs_.at(id.index()); }

  [[nodiscard]] std::span<const LocationId> hubs() const { return hubs_; }
  /// Bus arcs, the only arcs the design decides on.
  [[nodiscard]] std::span<const ArcId> bus_arcs() const { return bus_arcs_; }
  /// Bus and rail arcs; both endpoints are hubs.
  [[nodiscard]] std::span<const ArcId> fixed_route_arcs() const { return fixed_arcs_; }
  /// Position of a bus arc within bus_arcs(), or -1.
  [[nodiscard]] int bus_index(ArcId id) const { return bus_index_.at(id.index()); }

  [[nodiscard]] std::span<const int> bus_frequencies() const { return bus_frequencies_; }
  [[nodiscard]] std::span<const int> rail_frequencies() const { return rail_frequencies_; }

  [[nodiscard]] std::optional<LocationId> find_location(std::string_view name) const;
  [[nodiscard]] LocationId location_id(std::string_view name) const;
  [[nodiscard]] std::optional<ArcId> find_arc(LocationId from, LocationId to, Mode mode, int frequency = 0) const;
  [[nodiscard]] std::optional<ArcId> find_shuttle_arc(LocationId from, LocationId to) const {
    return find_arc(from, to, Mode::Shuttle, 0);
  }

  [[nodiscard]] const TravelMatrix& road() const { return *road_; }
  [[nodiscard]] std::shared_ptr<const TravelMatrix> road_ptr() const { return road_; }

 private:
  std::vector<Location> locations_;
  std::vector<Arc> arcs_;
  std::vector<int> bus_frequencies_;
  std::vector<int> rail_frequencies_;
  std::shared_ptr<const TravelMatrix> road_;
  std::vector<LocationId> hubs_;
  std::vector<ArcId> bus_arcs_;
  std::vector<ArcId> fixed_arcs_;
  std::vector<int> bus_index_;
  std::unordered_map<std::string, LocationId> by_name_;
  std::map<std::tuple<int, int, int, int>, ArcId> arc_lookup_;
};

struct NetworkOptions {
  std::vector<int> bus_frequencies{8, 12, 16};
  std::vector<int> rail_frequencies{24};
  /// Each bus-only hub connects to this many nearest rail stations.
  int nearest_rail_stations = 3;
  /// Rail travel times/distances; falls back to the road matrix.
  std::shared_ptr<const TravelMatrix> rail = nullptr;
};

/// Builds rail arcs between consecutive stations of every line, per-trip
/// shuttle arcs (origin to hubs, hubs to destination, direct), and bus arcs
/// for every frequency among bus-only hubs and from each bus-only hub to its
/// nearest rail stations. Throws InputError when a required pair is missing
/// from the matrix.
[[nodiscard]] NetworkModel build_network(std::vector<Location> locations, std::span<const Trip> trips,
                                         std::shared_ptr<const TravelMatrix> road,
                                         const NetworkOptions& options = {});

/// Nearest rail stations of a hub by road travel time, ties by station name.
[[nodiscard]] std::vector<LocationId> nearest_rail_stations(std::span<const Location> locations,
                                                            const TravelMatrix& road, LocationId hub,
                                                            int count);

struct ClusteringResult {
  std::vector<LocationId> representative;  // indexed by location
  std::vector<Trip> trips;                 // remapped, o == d trips removed
  int dropped_trips = 0;
};

/// Greedy stop clustering: hubs first, then stops by descending demand; a
/// stop within `radius_ft` of an existing center joins the nearest center.
[[nodiscard]] ClusteringResult cluster_stops(std::span<const Location> locations, std::span<const Trip> trips,
                                             double radius_ft = 1500.0);

}  // namespace odmts
