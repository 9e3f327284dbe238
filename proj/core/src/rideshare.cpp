#include "odmts/rideshare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>

#include "odmts/costs.hpp"
#include "odmts/errors.hpp"
#include "odmts/lp/mip.hpp"
#include "parallel.hpp"

namespace odmts {

std::string_view to_string(RequestClass c) {
  switch (c) {
    case RequestClass::ToHub:
      return "to_hub";
    case RequestClass::FromHub:
      return "from_hub";
    case RequestClass::Direct:
      return "direct";
  }
  return "unknown";
}

std::vector<ShuttleRequest> extract_requests(const NetworkModel& network, std::span<const Trip> trips,
                                             std::span<const TripPath> paths, const DesignParameters& params) {
  std::map<int, const TripPath*> by_trip;
  for (const TripPath& p : paths) by_trip[p.trip.value] = &p;
  std::vector<ShuttleRequest> out;
  for (const Trip& trip : trips) {
    auto it = by_trip.find(trip.id.value);
    if (it == by_trip.end()) throw InputError("trip '" + trip.name + "' has no design path");
    const auto& arcs = it->second->arcs;
    double t = trip.request_time_s;
    for (std::size_t leg = 0; leg < arcs.size(); ++leg) {
      const Arc& a = network.arc(arcs[leg]);
      if (a.mode == Mode::Shuttle) {
        RequestClass kind = RequestClass::Direct;
        LocationId hub;
        const bool first = leg == 0;
        const bool last = leg + 1 == arcs.size();
        if (first && !last) {
          kind = RequestClass::ToHub;
          hub = a.dest;
        } else if (last && !first) {
          kind = RequestClass::FromHub;
          hub = a.origin;
        }
        for (int p = 0; p < trip.passengers; ++p) {
          ShuttleRequest r;
          r.id = static_cast<int>(out.size());
          r.trip = trip.id;
          r.passenger = p;
          r.leg = static_cast<int>(leg);
          r.origin = a.origin;
          r.dest = a.dest;
          r.request_time_s = t;
          r.kind = kind;
          r.hub = hub;
          out.push_back(r);
        }
      }
      t += expected_wait_s(a, params) + a.travel_time_s;
    }
  }
  return out;
}

namespace {

struct Ordering {
  std::vector<RouteStop> stops;
  double duration = 0.0;
  double miles = 0.0;
  double ride_s = 0.0;
};

void append_stop(std::vector<RouteStop>& stops, LocationId at, double t) {
  if (stops.empty() || stops.back().location != at) stops.push_back(RouteStop{at, t, {}, {}});
}

// Evaluates one visiting order; nullopt when a rider exceeds the detour limit.
std::optional<Ordering> evaluate_order(const std::vector<const ShuttleRequest*>& order, double start,
                                       const TravelMatrix& road, const RideshareOptions& opt) {
  Ordering o;
  const bool to_hub = order.front()->kind == RequestClass::ToHub;
  double t = start;
  if (to_hub) {
    std::vector<double> picked;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0) {
        const auto e = road.at(order[i - 1]->origin, order[i]->origin);
        t += e.seconds;
        o.miles += e.miles;
      }
      append_stop(o.stops, order[i]->origin, t);
      o.stops.back().pickups.push_back(order[i]->id);
      picked.push_back(t);
    }
    const LocationId hub = order.front()->dest;
    const auto e = road.at(order.back()->origin, hub);
    t += e.seconds;
    o.miles += e.miles;
    append_stop(o.stops, hub, t);
    for (std::size_t i = 0; i < order.size(); ++i) {
      o.stops.back().dropoffs.push_back(order[i]->id);
      const double ride = t - picked[i];
      if (ride > opt.detour_factor * road.seconds(order[i]->origin, hub) + 1e-9) return std::nullopt;
      o.ride_s += ride;
    }
  } else {
    const LocationId hub = order.front()->origin;
    append_stop(o.stops, hub, t);
    for (const ShuttleRequest* r : order) o.stops.back().pickups.push_back(r->id);
    LocationId at = hub;
    for (const ShuttleRequest* r : order) {
      const auto e = road.at(at, r->dest);
      t += e.seconds;
      o.miles += e.miles;
      at = r->dest;
      append_stop(o.stops, at, t);
      o.stops.back().dropoffs.push_back(r->id);
      const double ride = t - start;
      if (ride > opt.detour_factor * road.seconds(hub, r->dest) + 1e-9) return std::nullopt;
      o.ride_s += ride;
    }
  }
  o.duration = t - start;
  return o;
}

double route_cost(double miles, double ride_s, const RideshareOptions& opt) {
  return (1.0 - opt.alpha) * miles * opt.cost_per_mile + opt.alpha * hours(ride_s);
}

std::optional<ShuttleRoute> build_route(std::vector<const ShuttleRequest*> group, const TravelMatrix& road,
                                        const RideshareOptions& opt) {
  std::sort(group.begin(), group.end(), [](auto* a, auto* b) { return a->id < b->id; });
  double start = 0.0;
  for (auto* r : group) start = std::max(start, r->request_time_s);

  std::optional<Ordering> best;
  std::vector<int> idx(group.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::vector<const ShuttleRequest*> order;
    for (int i : idx) order.push_back(group[i]);
    auto o = evaluate_order(order, start, road, opt);
    if (!o) continue;
    if (!best || o->duration < best->duration - 1e-9 ||
        (o->duration <= best->duration + 1e-9 && route_cost(o->miles, o->ride_s, opt) <
                                                     route_cost(best->miles, best->ride_s, opt) - 1e-12)) {
      best = std::move(o);
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  if (!best) return std::nullopt;

  ShuttleRoute route;
  for (auto* r : group) route.requests.push_back(r->id);
  route.stops = std::move(best->stops);
  route.start_time_s = start;
  route.end_time_s = start + best->duration;
  route.miles = best->miles;
  route.cost = route_cost(best->miles, best->ride_s, opt);
  return route;
}

}  // namespace

ShuttleRoute singleton_route(const ShuttleRequest& request, const TravelMatrix& road, const RideshareOptions& options) {
  ShuttleRoute route;
  route.requests = {request.id};
  const auto e = road.at(request.origin, request.dest);
  route.stops.push_back(RouteStop{request.origin, request.request_time_s, {request.id}, {}});
  route.stops.push_back(RouteStop{request.dest, request.request_time_s + e.seconds, {}, {request.id}});
  route.start_time_s = request.request_time_s;
  route.end_time_s = request.request_time_s + e.seconds;
  route.miles = e.miles;
  route.cost = route_cost(e.miles, e.seconds, options);
  return route;
}

std::vector<ShuttleRoute> enumerate_routes(std::span<const ShuttleRequest> requests, const TravelMatrix& road,
                                           const RideshareOptions& options) {
  if (options.capacity < 1) throw DomainError("shuttle capacity must be at least 1");
  std::vector<const ShuttleRequest*> sorted;
  for (const auto& r : requests) {
    if (r.kind == RequestClass::Direct) throw DomainError("direct requests are not grouped");
    if (r.kind != requests.front().kind || r.hub != requests.front().hub) {
      throw DomainError("route enumeration needs requests of a single hub and direction");
    }
    sorted.push_back(&r);
  }
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    return std::tie(a->request_time_s, a->id) < std::tie(b->request_time_s, b->id);
  });

  std::vector<ShuttleRoute> routes;
  std::vector<const ShuttleRequest*> group;
  // Groups are index-increasing in time order; the span test is first-to-last.
  auto extend = [&](auto&& self, std::size_t next) -> void {
    auto route = build_route(group, road, options);
    if (route) {
      route->id = static_cast<int>(routes.size());
      routes.push_back(std::move(*route));
    }
    if (static_cast<int>(group.size()) == options.capacity) return;
    for (std::size_t j = next; j < sorted.size(); ++j) {
      if (sorted[j]->request_time_s - group.front()->request_time_s > options.window_s + 1e-9) break;
      group.push_back(sorted[j]);
      self(self, j + 1);
      group.pop_back();
    }
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    group.assign(1, sorted[i]);
    extend(extend, i + 1);
  }
  return routes;
}

std::vector<int> solve_set_partitioning(std::span<const ShuttleRequest> requests,
                                        std::span<const ShuttleRoute> routes) {
  std::map<int, int> row_of;
  for (const auto& r : requests) row_of.emplace(r.id, static_cast<int>(row_of.size()));
  const int n = static_cast<int>(row_of.size());

  // Requests linked by a shared route form independent components.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& route : routes) {
    for (int id : route.requests) {
      auto it = row_of.find(id);
      if (it == row_of.end()) throw DomainError("route covers an unknown request");
      parent[find(it->second)] = find(row_of.at(route.requests.front()));
    }
  }
  std::map<int, std::vector<int>> routes_of;
  for (std::size_t k = 0; k < routes.size(); ++k) routes_of[find(row_of.at(routes[k].requests.front()))].push_back(static_cast<int>(k));
  std::vector<bool> covered(n, false);

  std::vector<int> selected;
  for (const auto& [root, members] : routes_of) {
    if (members.size() == 1) {
      selected.push_back(members.front());
      for (int id : routes[members.front()].requests) covered[row_of.at(id)] = true;
      continue;
    }
    lp::Problem p;
    std::map<int, std::vector<lp::Term>> rows;
    for (std::size_t v = 0; v < members.size(); ++v) {
      const auto& route = routes[members[v]];
      p.add_binary(route.cost);
      for (int id : route.requests) rows[row_of.at(id)].push_back({static_cast<int>(v), 1.0});
    }
    for (auto& [row, terms] : rows) p.add_row(std::move(terms), lp::Sense::Equal, 1.0);
    auto s = lp::solve_mip(p);
    if (s.status != lp::Status::Optimal) throw SolverError("set partitioning failed: " + std::string(lp::to_string(s.status)));
    for (std::size_t v = 0; v < members.size(); ++v) {
      if (s.x[v] > 0.5) {
        selected.push_back(members[v]);
        for (int id : routes[members[v]].requests) covered[row_of.at(id)] = true;
      }
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw DomainError("set partitioning needs a route for every request");
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

RidesharePlan plan_rideshare(std::vector<ShuttleRequest> requests, const TravelMatrix& road,
                             const RideshareOptions& options) {
  RidesharePlan plan;
  std::map<std::pair<int, int>, std::vector<ShuttleRequest>> classes;
  std::vector<ShuttleRoute> direct;
  for (const auto& r : requests) {
    if (r.kind == RequestClass::Direct) {
      direct.push_back(singleton_route(r, road, options));
    } else {
      classes[{static_cast<int>(r.kind), r.hub.value}].push_back(r);
    }
  }
  std::vector<std::vector<ShuttleRequest>*> groups;
  for (auto& [key, members] : classes) groups.push_back(&members);
  std::vector<std::vector<ShuttleRoute>> chosen(groups.size());
  detail::parallel_for(groups.size(), options.threads, [&](std::size_t g) {
    auto routes = enumerate_routes(*groups[g], road, options);
    for (int k : solve_set_partitioning(*groups[g], routes)) chosen[g].push_back(std::move(routes[k]));
  });
  for (auto& c : chosen) {
    for (auto& r : c) plan.routes.push_back(std::move(r));
  }
  for (auto& r : direct) plan.routes.push_back(std::move(r));
  std::stable_sort(plan.routes.begin(), plan.routes.end(), [](const auto& a, const auto& b) {
    return std::tie(a.start_time_s, a.requests.front()) < std::tie(b.start_time_s, b.requests.front());
  });
  for (std::size_t i = 0; i < plan.routes.size(); ++i) {
    plan.routes[i].id = static_cast<int>(i);
    plan.total_cost += plan.routes[i].cost;
  }
  plan.requests = std::move(requests);
  return plan;
}

bool routes_compatible(const ShuttleRoute& a, const ShuttleRoute& b, const TravelMatrix& road) {
  return a.end_time_s + road.seconds(a.end_location(), b.start_location()) <= b.start_time_s + 1e-9;
}

FleetPlan size_fleet(std::span<const ShuttleRoute> routes, const TravelMatrix& road) {
  const int n = static_cast<int>(routes.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && routes_compatible(routes[i], routes[j], road)) adj[i].push_back(j);
    }
  }
  // Augmenting-path bipartite matching (left = predecessor, right = successor).
  std::vector<int> match_right(n, -1);
  std::vector<int> match_left(n, -1);
  std::vector<int> seen(n, -1);
  auto augment = [&](auto&& self, int u, int stamp) -> bool {
    for (int v : adj[u]) {
      if (seen[v] == stamp) continue;
      seen[v] = stamp;
      if (match_right[v] < 0 || self(self, match_right[v], stamp)) {
        match_right[v] = u;
        match_left[u] = v;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int u = 0; u < n; ++u) {
    if (augment(augment, u, u)) ++matched;
  }

  FleetPlan plan;
  plan.size = n - matched;
  for (int u = 0; u < n; ++u) {
    if (match_right[u] >= 0) continue;
    std::vector<int> chain;
    for (int v = u; v >= 0; v = match_left[v]) chain.push_back(v);
    plan.chains.push_back(std::move(chain));
  }
  return plan;
}

}  // namespace odmts
