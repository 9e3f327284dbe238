#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "odmts/benders.hpp"
#include "odmts/dispatch.hpp"
#include "odmts/model.hpp"
#include "odmts/network.hpp"
#include "odmts/scenario.hpp"

namespace odmts {

/// A fixed route operated as a loop (bus) or one direction of a rail line.
/// Run k leaves the first stop at phase + k * headway and takes
/// segment_offset[i] to reach stop i.
struct TransitLine {
  std::string name;
  Mode mode = Mode::Bus;
  std::vector<ArcId> arcs;
  std::vector<double> segment_offset_s;
  int frequency = 0;
  double headway_s = 0.0;
  double cycle_s = 0.0;
  int vehicles = 0;
  double phase_s = 0.0;
};

/// Splits the open bus arcs into cycles; each cycle becomes a line whose
/// frequency is its share of the arc frequencies. Requires flow balance.
[[nodiscard]] std::vector<TransitLine> build_bus_lines(const NetworkModel& network, std::span<const double> z,
                                                       const DesignParameters& params, std::uint64_t seed);

/// Both directions of every rail line, consecutive stations only.
[[nodiscard]] std::vector<TransitLine> build_rail_lines(const NetworkModel& network, const DesignParameters& params,
                                                        std::uint64_t seed);

struct SimulationOptions {
  int bus_capacity = 57;
  int rail_capacity = 576;
  double epoch_s = 30.0;
  double overwhelm_window_s = 1800.0;
  double overwhelm_mean_wait_s = 900.0;
  double overwhelm_max_wait_s = 1800.0;
  DispatchOptions dispatch{};
  bool record_dispatch_log = false;
};

struct LegRecord {
  ArcId arc;
  Mode mode = Mode::Shuttle;
  double arrive_s = 0.0;  // at the stop / request time
  double board_s = -1.0;
  double alight_s = -1.0;
  std::string vehicle;
};

struct PassengerRecord {
  TripId trip;
  int passenger = 0;
  double start_s = 0.0;
  std::vector<LegRecord> legs;
  bool done = false;

  [[nodiscard]] double wait_s() const;
  [[nodiscard]] double travel_s() const;  // in-vehicle time
  [[nodiscard]] double total_s() const;   // end - start
};

struct VehicleLeg {
  std::string vehicle;
  Mode mode = Mode::Shuttle;
  LocationId from;
  LocationId to;
  double depart_s = 0.0;
  double arrive_s = 0.0;
  int occupancy = 0;
  int capacity = 0;
  double miles = 0.0;
};

struct WaitBins {
  int trips = 0;
  std::array<int, 3> counts{};  // [0,5), [5,10), >=10 minutes

  [[nodiscard]] std::array<double, 3> percentages() const;
};

struct DispatchLogRow {
  double time_s = 0.0;
  int pending = 0;
  int served = 0;
  int postponed = 0;
  int pool = 0;
  double objective = 0.0;
};

struct SimulationReport {
  double horizon_s = 0.0;
  double extended_horizon_s = 0.0;
  int fleet_size = 0;
  int bus_vehicles = 0;
  int bus_lines = 0;
  int passengers_started = 0;
  int passengers_completed = 0;
  int passengers_in_flight = 0;
  int stranded = 0;
  int capacity_violations = 0;
  double mean_wait_s = 0.0;
  double mean_travel_s = 0.0;
  double mean_total_s = 0.0;
  double max_shuttle_wait_s = 0.0;
  double peak_rolling_shuttle_wait_s = 0.0;
  bool overwhelmed = false;
  std::map<Mode, WaitBins> wait_bins;
  double shuttle_miles = 0.0;
  std::vector<double> shuttle_miles_by_occupancy;
  std::vector<std::pair<double, int>> active_shuttles;  // per epoch in [0, L]
  std::vector<PassengerRecord> passengers;           // started in [0, L]
  std::vector<VehicleLeg> vehicle_legs;              // departing in [0, L]
  std::vector<DispatchLogRow> dispatch_log;
};

/// Discrete-event run of a design over [0, L+]; metrics cover [0, L].
/// Passengers take the first vehicle with a free seat; shuttle legs are
/// dispatched in epochs. Deterministic for fixed inputs and seed.
[[nodiscard]] SimulationReport simulate(const NetworkModel& network, const DesignSolution& design,
                                        std::span<const Trip> trips, const DesignParameters& params,
                                        const Scenario& scenario, int fleet_size,
                                        const SimulationOptions& options = {});

/// Initial shuttle positions: hubs weighted by the number of shuttle
/// requests touching them, largest-remainder rounding.
[[nodiscard]] std::vector<LocationId> seed_shuttles(const NetworkModel& network, std::span<const ShuttleRequest> requests,
                                                    int fleet_size);

struct AutoscaleResult {
  int fleet_size = 0;
  int escalations = 0;
  bool failed = false;
  SimulationReport report;
};

/// Grows the fleet by 10% (rounded up) while the run is overwhelmed, at most
/// `max_escalations` times.
[[nodiscard]] AutoscaleResult autoscale_fleet(int initial_fleet,
                                              const std::function<SimulationReport(int)>& run,
                                              int max_escalations = 10);

}  // namespace odmts
