#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "odmts/benders.hpp"
#include "odmts/model.hpp"
#include "odmts/network.hpp"
#include "odmts/travel_matrix.hpp"

namespace odmts {

enum class RequestClass { ToHub, FromHub, Direct };

[[nodiscard]] std::string_view to_string(RequestClass c);

/// One passenger's shuttle leg.
struct ShuttleRequest {
  int id = 0;
  TripId trip;
  int passenger = 0;  // index within the trip
  int leg = 0;        // position of the shuttle arc in the trip path
  LocationId origin;
  LocationId dest;
  double request_time_s = 0.0;
  RequestClass kind = RequestClass::Direct;
  LocationId hub;  // valid for ToHub / FromHub
};

/// Requests for every shuttle arc of every passenger's path. The first leg
/// is requested at the trip start; later legs at the time reached by
/// following the path (travel plus expected waits).
[[nodiscard]] std::vector<ShuttleRequest> extract_requests(const NetworkModel& network, std::span<const Trip> trips,
                                                           std::span<const TripPath> paths,
                                                           const DesignParameters& params);

struct RouteStop {
  LocationId location;
  double time_s = 0.0;
  std::vector<int> pickups;   // request ids
  std::vector<int> dropoffs;  // request ids
};

struct ShuttleRoute {
  int id = 0;
  std::vector<int> requests;  // request ids, ascending
  std::vector<RouteStop> stops;
  double start_time_s = 0.0;
  double end_time_s = 0.0;
  double miles = 0.0;
  double cost = 0.0;

  [[nodiscard]] LocationId start_location() const { return stops.front().location; }
  [[nodiscard]] LocationId end_location() const { return stops.back().location; }
};

struct RideshareOptions {
  int capacity = 4;
  double window_s = 30.0;
  double detour_factor = 1.5;
  double alpha = 7.25 / 8.25;
  double cost_per_mile = 1.0;
  int threads = 0;
};

/// All feasible groups of one hub-direction class: size <= capacity,
/// request times pairwise within the window, and an ordering in which every
/// rider stays within detour_factor of the direct time. Each group keeps its
/// shortest-duration feasible ordering. Routes are returned with ids equal
/// to their position.
[[nodiscard]] std::vector<ShuttleRoute> enumerate_routes(std::span<const ShuttleRequest> requests,
                                                         const TravelMatrix& road, const RideshareOptions& options);

/// Single-request route (used for Direct requests and as the feasibility
/// backstop of set partitioning).
[[nodiscard]] ShuttleRoute singleton_route(const ShuttleRequest& request, const TravelMatrix& road,
                                           const RideshareOptions& options);

/// Minimum-cost exact cover of `requests` by `routes`; returns the indices of
/// the selected routes in ascending order.
[[nodiscard]] std::vector<int> solve_set_partitioning(std::span<const ShuttleRequest> requests,
                                                      std::span<const ShuttleRoute> routes);

struct RidesharePlan {
  std::vector<ShuttleRequest> requests;
  std::vector<ShuttleRoute> routes;  // selected, ordered by start time then id
  double total_cost = 0.0;
};

/// Partitions requests by class and hub, enumerates and selects routes per
/// class independently; Direct requests stay singletons.
[[nodiscard]] RidesharePlan plan_rideshare(std::vector<ShuttleRequest> requests, const TravelMatrix& road,
                                           const RideshareOptions& options);

struct FleetPlan {
  int size = 0;
  /// Route indices served by each shuttle, in time order.
  std::vector<std::vector<int>> chains;
};

/// Minimum number of shuttles covering all routes, where a shuttle can serve
/// r then r' when r ends early enough to relocate to the start of r'.
/// Computed as a minimum path cover: routes minus a maximum matching.
[[nodiscard]] FleetPlan size_fleet(std::span<const ShuttleRoute> routes, const TravelMatrix& road);

/// Whether a shuttle finishing `a` can start `b` on time.
[[nodiscard]] bool routes_compatible(const ShuttleRoute& a, const ShuttleRoute& b, const TravelMatrix& road);

}  // namespace odmts
