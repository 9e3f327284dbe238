#pragma once

#include "odmts/lp/problem.hpp"

namespace odmts::lp {

struct SimplexOptions {
  int max_iterations = 200000;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 50;
};

/// Bounded-variable primal simplex on a dense tableau, two phases.
[[nodiscard]] Solution solve_lp(const Problem& problem, const SimplexOptions& options = {});

/// Same, with variable bounds replaced (used by branch-and-bound nodes).
[[nodiscard]] Solution solve_lp(const Problem& problem, const std::vector<double>& lower,
                                const std::vector<double>& upper, const SimplexOptions& options = {});

}  // namespace odmts::lp
