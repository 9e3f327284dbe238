#pragma once

#include <span>
#include <string>
#include <vector>

#include "odmts/lp/mip.hpp"
#include "odmts/model.hpp"
#include "odmts/network.hpp"

namespace odmts {

/// theta >= intercept + sum_a coefficients[a] * (z_a - anchor[a]),
/// indexed by position in NetworkModel::bus_arcs().
struct BendersCut {
  double intercept = 0.0;
  std::vector<double> coefficients;
  std::vector<double> anchor;

  [[nodiscard]] double evaluate(std::span<const double> z) const;
};

struct TripPath {
  TripId trip;
  std::vector<ArcId> arcs;
  double cost = 0.0;
};

struct BendersTraceRow {
  int iteration = 0;
  std::string phase;  // "initial", "fractional" or "integer"
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  int cuts_added = 0;
};

struct DesignSolution {
  /// Per bus arc (bus_arcs() order), 0 or 1.
  std::vector<double> z;
  std::vector<ArcId> open_bus_arcs;
  double objective_total = 0.0;
  double fixed_cost_part = 0.0;
  double passenger_part = 0.0;
  double lower_bound = 0.0;
  std::vector<TripPath> paths;
  bool optimal = true;
  int iterations = 0;
  std::vector<BendersTraceRow> trace;
  /// Every cut added to the master, in order (empty for evaluate_design).
  std::vector<BendersCut> cuts;
};

struct MasterSolution {
  lp::Status status = lp::Status::Infeasible;
  std::vector<double> z;
  double theta = 0.0;
  double objective = 0.0;
};

struct BendersOptions {
  int max_iterations = 500;
  int max_fractional_rounds = 50;
  /// Relative cut violation tolerance: theta_hat + tol * (1 + |theta_hat|).
  double cut_tolerance = 1e-6;
  double gap_tolerance = 1e-6;
  /// 0 picks the hardware concurrency.
  int threads = 0;
  lp::MipOptions mip{};
};

/// Master problem: min sum beta z + theta subject to hub flow balance, at most
/// one frequency per ordered hub pair, and the cuts. With `relax` the z
/// variables are continuous in [0, 1].
[[nodiscard]] MasterSolution solve_master(const NetworkModel& network, const DesignParameters& params,
                                          std::span<const BendersCut> cuts, bool relax = false,
                                          const lp::MipOptions& options = {});

/// Passenger cost and aggregated cut at a (possibly fractional) design.
struct SubproblemBatch {
  double value = 0.0;
  BendersCut cut;
  std::vector<TripPath> paths;  // filled only for integral designs
};

[[nodiscard]] SubproblemBatch solve_subproblems(const NetworkModel& network, std::span<const Trip> trips,
                                                const DesignParameters& params, std::span<const double> z,
                                                int threads = 0);

/// Objective, paths and components of a fixed integral design.
[[nodiscard]] DesignSolution evaluate_design(const NetworkModel& network, std::span<const Trip> trips,
                                             const DesignParameters& params, std::span<const double> z,
                                             int threads = 0);

/// Benders decomposition: cuts are first separated at fractional master
/// LP solutions, then at integral master solutions until the gap closes.
[[nodiscard]] DesignSolution benders_solve(const NetworkModel& network, std::span<const Trip> trips,
                                           const DesignParameters& params, const BendersOptions& options = {});

/// Whether z satisfies flow balance and the one-frequency rule.
[[nodiscard]] bool design_is_feasible(const NetworkModel& network, std::span<const double> z);

}  // namespace odmts
