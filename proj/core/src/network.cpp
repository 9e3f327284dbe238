#include "odmts/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "odmts/errors.hpp"

namespace odmts {

NetworkModel::NetworkModel(std::vector<Location> locations, std::vector<Arc> arcs, std::vector<int> bus_frequencies,
                           std::vector<int> rail_frequencies, std::shared_ptr<const TravelMatrix> road)
    : locations_(std::move(locations)),
      arcs_(std::move(arcs)),
      bus_frequencies_(std::move(bus_frequencies)),
      rail_frequencies_(std::move(rail_frequencies)),
      road_(std::move(road)) {
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    auto& loc = locations_[i];
    if (loc.id.index() != i) throw InputError("location ids must be dense and ordered");
    if (loc.is_rail_station && !loc.is_hub) throw InputError("rail station '" + loc.name + "' must be a hub");
    if (!by_name_.emplace(loc.name, loc.id).second) throw InputError("duplicate location id '" + loc.name + "'");
    if (loc.is_hub) hubs_.push_back(loc.id);
  }
  bus_index_.assign(arcs_.size(), -1);
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.id.index() != a) throw InputError("arc ids must be dense and ordered");
    if (!(arc.travel_time_s > 0.0) || arc.distance_mi < 0.0) {
      throw InputError("arc " + location(arc.origin).name + "->" + location(arc.dest).name +
                       " needs positive travel time and nonnegative distance");
    }
    const auto key = std::tuple{arc.origin.value, arc.dest.value, static_cast<int>(arc.mode), arc.frequency};
    if (!arc_lookup_.emplace(key, arc.id).second) throw InputError("duplicate arc in network");
    if (arc.is_fixed_route()) {
      if (!location(arc.origin).is_hub || !location(arc.dest).is_hub) {
        throw InputError("bus and rail arcs must connect hubs");
      }
      fixed_arcs_.push_back(arc.id);
    }
    if (arc.mode == Mode::Bus) {
      if (std::find(bus_frequencies_.begin(), bus_frequencies_.end(), arc.frequency) == bus_frequencies_.end()) {
        throw InputError("bus arc frequency not in the bus frequency set");
      }
      bus_index_[a] = static_cast<int>(bus_arcs_.size());
      bus_arcs_.push_back(arc.id);
    }
  }
  if (!road_) throw InputError("network requires a road travel matrix");
}

std::optional<LocationId> NetworkModel::find_location(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

LocationId NetworkModel::location_id(std::string_view name) const {
  auto id = find_location(name);
  if (!id) throw InputError("unknown location id '" + std::string(name) + "'");
  return *id;
}

std::optional<ArcId> NetworkModel::find_arc(LocationId from, LocationId to, Mode mode, int frequency) const {
  auto it = arc_lookup_.find(std::tuple{from.value, to.value, static_cast<int>(mode), frequency});
  if (it == arc_lookup_.end()) return std::nullopt;
  return it->second;
}

namespace {

TravelEntry require_pair(const TravelMatrix& matrix, std::span<const Location> locations, LocationId from,
                         LocationId to) {
  auto entry = matrix.find(from, to);
  if (!entry) {
    throw InputError("missing travel time/distance for pair " + locations[from.index()].name + " -> " +
                     locations[to.index()].name);
  }
  return *entry;
}

class ArcSet {
 public:
  void add(LocationId from, LocationId to, Mode mode, int frequency, TravelEntry entry) {
    if (from == to) return;
    auto key = std::tuple{from.value, to.value, static_cast<int>(mode), frequency};
    if (!seen_.insert(key).second) return;
    Arc arc;
    arc.id = ArcId(arcs_.size());
    arc.origin = from;
    arc.dest = to;
    arc.mode = mode;
    arc.frequency = frequency;
    arc.travel_time_s = entry.seconds;
    arc.distance_mi = entry.miles;
    arcs_.push_back(arc);
  }
  std::vector<Arc> take() { return std::move(arcs_); }

 private:
  std::set<std::tuple<int, int, int, int>> seen_;
  std::vector<Arc> arcs_;
};

}  // namespace

std::vector<LocationId> nearest_rail_stations(std::span<const Location> locations, const TravelMatrix& road,
                                              LocationId hub, int count) {
  std::vector<std::pair<double, const Location*>> stations;
  for (const auto& loc : locations) {
    if (!loc.is_rail_station || loc.id == hub) continue;
    stations.emplace_back(require_pair(road, locations, hub, loc.id).seconds, &loc);
  }
  std::sort(stations.begin(), stations.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->name < b.second->name;
  });
  std::vector<LocationId> out;
  for (std::size_t i = 0; i < stations.size() && static_cast<int>(i) < count; ++i) out.push_back(stations[i].second->id);
  return out;
}

NetworkModel build_network(std::vector<Location> locations, std::span<const Trip> trips,
                           std::shared_ptr<const TravelMatrix> road, const NetworkOptions& options) {
  if (!road) throw InputError("network requires a road travel matrix");
  for (std::size_t i = 0; i < locations.size(); ++i) locations[i].id = LocationId(i);
  const TravelMatrix& rail = options.rail ? *options.rail : *road;

  std::vector<LocationId> hubs;
  for (const auto& loc : locations) {
    if (loc.is_rail_station && !loc.is_hub) throw InputError("rail station '" + loc.name + "' must be a hub");
    if (loc.is_hub) hubs.push_back(loc.id);
  }
  if (hubs.empty()) throw InputError("the hub set must be nonempty");

  ArcSet arcs;

  // Rail: consecutive stations of each line, both directions.
  std::map<std::string, std::vector<std::pair<int, LocationId>>> lines;
  for (const auto& loc : locations) {
    for (const auto& membership : loc.rail_lines) lines[membership.line].emplace_back(membership.position, loc.id);
  }
  if (!lines.empty() && options.rail_frequencies.empty()) throw InputError("rail lines need a rail frequency");
  for (auto& [name, stations] : lines) {
    std::stable_sort(stations.begin(), stations.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t s = 0; s + 1 < stations.size(); ++s) {
      const LocationId a = stations[s].second;
      const LocationId b = stations[s + 1].second;
      for (int f : options.rail_frequencies) {
        arcs.add(a, b, Mode::Rail, f, require_pair(rail, locations, a, b));
        arcs.add(b, a, Mode::Rail, f, require_pair(rail, locations, b, a));
      }
    }
  }

  // Bus: among bus-only hubs, and bus-only hub <-> nearest rail stations.
  std::vector<LocationId> bus_only;
  for (LocationId h : hubs) {
    if (!locations[h.index()].is_rail_station) bus_only.push_back(h);
  }
  auto add_bus = [&](LocationId a, LocationId b) {
    const TravelEntry entry = require_pair(*road, locations, a, b);
    for (int f : options.bus_frequencies) arcs.add(a, b, Mode::Bus, f, entry);
  };
  for (LocationId a : bus_only) {
    for (LocationId b : bus_only) {
      if (a != b) add_bus(a, b);
    }
  }
  for (LocationId a : bus_only) {
    for (LocationId r : nearest_rail_stations(locations, *road, a, options.nearest_rail_stations)) {
      add_bus(a, r);
      add_bus(r, a);
    }
  }

  // Shuttle: per trip, origin -> hubs, hubs -> destination, direct.
  for (const Trip& trip : trips) {
    if (trip.origin.index() >= locations.size() || trip.dest.index() >= locations.size()) {
      throw InputError("trip '" + trip.name + "' references an unknown location");
    }
    for (LocationId h : hubs) {
      arcs.add(trip.origin, h, Mode::Shuttle, 0, require_pair(*road, locations, trip.origin, h));
      arcs.add(h, trip.dest, Mode::Shuttle, 0, require_pair(*road, locations, h, trip.dest));
    }
    arcs.add(trip.origin, trip.dest, Mode::Shuttle, 0, require_pair(*road, locations, trip.origin, trip.dest));
  }

  return NetworkModel(std::move(locations), arcs.take(), options.bus_frequencies, options.rail_frequencies,
                      std::move(road));
}

ClusteringResult cluster_stops(std::span<const Location> locations, std::span<const Trip> trips, double radius_ft) {
  constexpr double kFeetPerMile = 5280.0;
  const double radius_mi = radius_ft / kFeetPerMile;
  std::vector<double> demand(locations.size(), 0.0);
  for (const Trip& t : trips) {
    demand.at(t.origin.index()) += t.passengers;
    demand.at(t.dest.index()) += t.passengers;
  }
  std::vector<std::size_t> order(locations.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (locations[a].is_hub != locations[b].is_hub) return locations[a].is_hub;
    if (demand[a] != demand[b]) return demand[a] > demand[b];
    return locations[a].name < locations[b].name;
  });

  ClusteringResult result;
  result.representative.assign(locations.size(), LocationId{});
  std::vector<std::size_t> centers;
  for (std::size_t i : order) {
    if (locations[i].is_hub) {
      centers.push_back(i);
      result.representative[i] = locations[i].id;
      continue;
    }
    double best = radius_mi;
    std::optional<std::size_t> nearest;
    for (std::size_t c : centers) {
      const double d = haversine_miles(locations[i], locations[c]);
      if (d <= best) {
        best = d;
        nearest = c;
      }
    }
    if (nearest) {
      result.representative[i] = locations[*nearest].id;
    } else {
      centers.push_back(i);
      result.representative[i] = locations[i].id;
    }
  }
  for (const Trip& t : trips) {
    Trip mapped = t;
    mapped.origin = result.representative[t.origin.index()];
    mapped.dest = result.representative[t.dest.index()];
    if (mapped.origin == mapped.dest) {
      ++result.dropped_trips;
      continue;
    }
    result.trips.push_back(std::move(mapped));
  }
  return result;
}

}  // namespace odmts
