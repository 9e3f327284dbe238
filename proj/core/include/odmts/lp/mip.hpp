#pragma once

#include "odmts/lp/problem.hpp"
#include "odmts/lp/simplex.hpp"

namespace odmts::lp {

struct MipOptions {
  int max_nodes = 200000;
  double integrality_tol = 1e-6;
  double absolute_gap = 1e-9;
  double relative_gap = 1e-9;
  SimplexOptions simplex{};
};

struct MipSolution {
  Status status = Status::Infeasible;
  double objective = kInfinity;
  double bound = -kInfinity;
  std::vector<double> x;
  int nodes = 0;
};

/// Branch-and-bound over the integer variables. Nodes are explored by
/// diving into the child nearest the LP value, and backtracking to the open
/// node with the best bound; branching picks the most fractional variable.
[[nodiscard]] MipSolution solve_mip(const Problem& problem, const MipOptions& options = {});

}  // namespace odmts::lp
