#include "odmts/teg.hpp"

#include "odmts/costs.hpp"
#include "odmts/errors.hpp"

namespace odmts {

std::vector<ArcId> trip_arc_set(const Trip& trip, const NetworkModel& network) {
  std::vector<ArcId> out(network.fixed_route_arcs().begin(), network.fixed_route_arcs().end());
  auto direct = network.find_shuttle_arc(trip.origin, trip.dest);
  if (!direct) throw InputError("trip '" + trip.name + "' has no direct shuttle arc in the network");
  out.push_back(*direct);
  // When o or d is itself a hub the direct arc also shows up as access or egress.
  for (LocationId h : network.hubs()) {
    if (h == trip.dest) continue;
    if (auto a = network.find_shuttle_arc(trip.origin, h)) out.push_back(*a);
  }
  for (LocationId h : network.hubs()) {
    if (h == trip.origin) continue;
    if (auto a = network.find_shuttle_arc(h, trip.dest)) out.push_back(*a);
  }
  return out;
}

TransferExpandedGraph build_teg(const Trip& trip, const NetworkModel& network, const DesignParameters& params) {
  if (params.transfer_limit < 1) throw DomainError("transfer limit K must be at least 1");
  TransferExpandedGraph g;
  g.trip = trip.id;
  g.layers = params.transfer_limit - 1;

  std::vector<int> slot(network.locations().size(), -1);
  for (LocationId h : network.hubs()) {
    if (h == trip.origin || h == trip.dest) continue;
    slot[h.index()] = static_cast<int>(g.hub_slots.size());
    g.hub_slots.push_back(h);
  }
  g.vertex_count = 2 + g.layers * static_cast<int>(g.hub_slots.size());

  for (ArcId id : trip_arc_set(trip, network)) {
    const Arc& a = network.arc(id);
    if (a.dest == trip.origin || a.origin == trip.dest) continue;
    const double cost = arc_trip_cost(a, trip, params);
    const int bus = network.bus_index(id);
    auto add = [&](int from, int to) { g.arcs.push_back({from, to, cost, id, bus}); };

    const bool from_origin = a.origin == trip.origin;
    const bool to_dest = a.dest == trip.dest;
    if (from_origin && to_dest) {
      add(TransferExpandedGraph::kOrigin, TransferExpandedGraph::kDestination);
    } else if (from_origin) {
      const int j = slot[a.dest.index()];
      if (j >= 0 && g.layers >= 1) add(TransferExpandedGraph::kOrigin, g.hub_vertex(j, 1));
    } else if (to_dest) {
      const int i = slot[a.origin.index()];
      if (i < 0) continue;
      for (int k = 1; k <= g.layers; ++k) add(g.hub_vertex(i, k), TransferExpandedGraph::kDestination);
    } else {
      const int i = slot[a.origin.index()];
      const int j = slot[a.dest.index()];
      if (i < 0 || j < 0) continue;
      for (int k = 1; k + 1 <= g.layers; ++k) add(g.hub_vertex(i, k), g.hub_vertex(j, k + 1));
    }
  }
  return g;
}

}  // namespace odmts
