#pragma once

#include <span>
#include <vector>

#include "odmts/teg.hpp"

namespace odmts {

/// Optimal unit flow through a transfer-expanded graph together with an
/// optimal dual solution of the LP relaxation.
struct SubproblemResult {
  double cost = 0.0;
  /// Flow per TEG arc; integral whenever the design is integral.
  std::vector<double> flow;
  /// Dual of y <= z for each TEG arc (0 for uncapacitated arcs); all <= 0.
  std::vector<double> capacity_duals;
  /// Node potentials pi with pi(origin) = 0; pi(d) - pi(o) + sum(mu z) = cost.
  std::vector<double> potentials;
  /// Original arcs of the flow path, in travel order. Only meaningful when
  /// the flow is integral.
  std::vector<ArcId> path;
  bool integral = true;
};

/// Solves the trip's shortest path problem where copies of bus arc a carry
/// capacity design[bus_index(a)] in [0, 1], by successive shortest paths.
/// Capacity duals are derived from residual shortest distances; among
/// optimal duals the potentials of nodes unreachable from the origin are
/// chosen as small as possible, which keeps |mu| small.
[[nodiscard]] SubproblemResult solve_subproblem(const TransferExpandedGraph& teg, std::span<const double> design);

/// Sum of mu over all copies of each bus arc, accumulated into `coefficients`.
void accumulate_cut_coefficients(const TransferExpandedGraph& teg, const SubproblemResult& result,
                                 std::span<double> coefficients);

}  // namespace odmts
