#pragma once

#include <cstddef>
#include <vector>

#include "odmts/model.hpp"
#include "odmts/network.hpp"

namespace odmts {

/// Layered copy of the network for a single trip. Vertex 0 is the origin,
/// vertex 1 the destination, and hub h in layer k (1 <= k <= K-1) is
/// vertex 2 + (k-1) * H + slot(h). Every origin-destination path has at
/// most K arcs, so the transfer limit holds structurally.
struct TransferExpandedGraph {
  struct Arc {
    int from = 0;
    int to = 0;
    double cost = 0.0;
    ArcId original;
    int bus_index = -1;  // >= 0 when capacity is bounded by the design
  };

  TripId trip;
  int layers = 0;  // K - 1
  std::vector<LocationId> hub_slots;
  std::vector<Arc> arcs;
  int vertex_count = 2;

  static constexpr int kOrigin = 0;
  static constexpr int kDestination = 1;

  [[nodiscard]] int hub_vertex(int slot, int layer) const {
    return 2 + (layer - 1) * static_cast<int>(hub_slots.size()) + slot;
  }
};

/// Copies of fixed-route arcs between hubs go layer k -> k+1; the trip's
/// shuttle arcs connect the origin to layer 1, every layer to the
/// destination, and the origin directly to the destination.
[[nodiscard]] TransferExpandedGraph build_teg(const Trip& trip, const NetworkModel& network,
                                              const DesignParameters& params);

/// Arcs a single trip may use in the original graph: every bus and rail arc
/// plus the trip's own shuttle arcs.
[[nodiscard]] std::vector<ArcId> trip_arc_set(const Trip& trip, const NetworkModel& network);

}  // namespace odmts
