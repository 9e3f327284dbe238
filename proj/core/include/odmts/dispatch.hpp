#pragma once

#include <optional>
#include <span>
#include <vector>

#include "odmts/rideshare.hpp"
#include "odmts/travel_matrix.hpp"

namespace odmts {

struct Action {
  enum class Kind { Pickup, Dropoff };
  Kind kind = Kind::Pickup;
  int request = 0;
  LocationId location;

  friend bool operator==(const Action&, const Action&) = default;
};

struct OnboardRider {
  int request = 0;
  double pickup_time_s = 0.0;
};

/// Dispatcher view of a shuttle. The shuttle is free at `location` from
/// `ready_time_s`; when `first_locked` it is already driving to the first
/// committed action, which therefore cannot be preceded by an insertion.
struct ShuttleState {
  int id = 0;
  LocationId location;
  double ready_time_s = 0.0;
  std::vector<OnboardRider> onboard;
  std::vector<Action> committed;
  bool first_locked = false;
};

struct PendingRequest {
  int request = 0;  // index into the request table
  int epochs_waiting = 0;
};

struct DispatchOptions {
  int capacity = 4;
  double detour_factor = 1.5;
  double epoch_s = 30.0;
  double base_penalty_s = 420.0;
  /// Improvement steps per epoch (deterministic stand-in for a time budget).
  int improvement_iterations = 200;
  /// Per request, keep single insertions only for this many cheapest
  /// shuttles; 0 keeps all of them.
  int shuttles_per_request = 0;
  /// Enumerate every subset and interleaving per shuttle (small cases only).
  bool exhaustive = false;
};

/// g_p = base * 2^floor(epochs / 10).
[[nodiscard]] double postponement_penalty(int epochs_waiting, double base_penalty_s = 420.0);

struct CandidateRoute {
  int shuttle = 0;  // index into the shuttle list
  std::vector<Action> actions;
  std::vector<int> served;  // newly served pending requests, ascending
  double cost = 0.0;        // sum of waits before pickup, seconds
};

struct EpochDecision {
  /// One route per shuttle, in shuttle order.
  std::vector<CandidateRoute> routes;
  std::vector<int> served;
  std::vector<int> postponed;
  double objective = 0.0;
  int pool_size = 0;
};

/// Timing of an action plan: pickup waits, capacity and detour checks.
/// Returns the summed pickup waits, or nullopt when infeasible.
[[nodiscard]] std::optional<double> plan_cost(const ShuttleState& shuttle, std::span<const Action> actions,
                                              double now, std::span<const ShuttleRequest> requests,
                                              const TravelMatrix& road, const DispatchOptions& options);

/// Candidate pool: per shuttle the committed-only route, single insertions
/// of pending requests, and greedy multi-request extensions.
[[nodiscard]] std::vector<CandidateRoute> generate_candidate_routes(double now, std::span<const ShuttleState> shuttles,
                                                                    std::span<const PendingRequest> pending,
                                                                    std::span<const ShuttleRequest> requests,
                                                                    const TravelMatrix& road,
                                                                    const DispatchOptions& options);

/// Selects one route per shuttle and postpones the rest, minimizing route
/// costs plus postponement penalties over the candidate pool.
[[nodiscard]] EpochDecision run_epoch(double now, std::span<const ShuttleState> shuttles,
                                      std::span<const PendingRequest> pending,
                                      std::span<const ShuttleRequest> requests, const TravelMatrix& road,
                                      const DispatchOptions& options);

}  // namespace odmts
