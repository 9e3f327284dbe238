#include "odmts/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "odmts/costs.hpp"
#include "odmts/errors.hpp"
#include "random.hpp"

namespace odmts {

double PassengerRecord::wait_s() const {
  double w = 0.0;
  for (const auto& l : legs) {
    if (l.board_s >= 0.0) w += l.board_s - l.arrive_s;
  }
  return w;
}

double PassengerRecord::travel_s() const {
  double t = 0.0;
  for (const auto& l : legs) {
    if (l.alight_s >= 0.0) t += l.alight_s - l.board_s;
  }
  return t;
}

double PassengerRecord::total_s() const {
  if (legs.empty() || legs.back().alight_s < 0.0) return 0.0;
  return legs.back().alight_s - start_s;
}

std::array<double, 3> WaitBins::percentages() const {
  std::array<double, 3> p{};
  if (trips == 0) return p;
  for (int i = 0; i < 3; ++i) p[i] = 100.0 * counts[i] / trips;
  return p;
}

namespace {

TransitLine make_line(std::string name, Mode mode, std::vector<ArcId> arcs, int frequency, const NetworkModel& network,
                      const DesignParameters& params, std::uint64_t seed, std::uint64_t salt) {
  TransitLine line;
  line.name = std::move(name);
  line.mode = mode;
  line.frequency = frequency;
  line.headway_s = params.horizon_s / frequency;
  double offset = 0.0;
  for (ArcId a : arcs) {
    line.segment_offset_s.push_back(offset);
    offset += network.arc(a).travel_time_s;
  }
  line.arcs = std::move(arcs);
  line.cycle_s = offset;
  line.vehicles = static_cast<int>(std::ceil(line.cycle_s / line.headway_s - 1e-9));
  detail::SplitMix64 rng(detail::mix_seed(seed, salt));
  line.phase_s = rng.uniform01() * line.headway_s;
  return line;
}

}  // namespace

std::vector<TransitLine> build_bus_lines(const NetworkModel& network, std::span<const double> z,
                                         const DesignParameters& params, std::uint64_t seed) {
  const auto bus = network.bus_arcs();
  if (z.size() != bus.size()) throw DomainError("design vector has the wrong length");
  std::vector<int> remaining(bus.size(), 0);
  for (std::size_t a = 0; a < bus.size(); ++a) {
    if (z[a] > 0.5) remaining[a] = network.arc(bus[a]).frequency;
  }
  auto next_from = [&](LocationId node) {
    for (std::size_t a = 0; a < bus.size(); ++a) {
      if (remaining[a] > 0 && network.arc(bus[a]).origin == node) return static_cast<int>(a);
    }
    return -1;
  };

  std::vector<TransitLine> lines;
  while (true) {
    int start = -1;
    for (std::size_t a = 0; a < bus.size(); ++a) {
      if (remaining[a] > 0) {
        start = static_cast<int>(a);
        break;
      }
    }
    if (start < 0) break;
    std::vector<LocationId> nodes{network.arc(bus[start]).origin};
    std::vector<int> walk;
    int cur = start;
    std::vector<int> cycle;
    while (true) {
      walk.push_back(cur);
      const LocationId at = network.arc(bus[cur]).dest;
      auto seen = std::find(nodes.begin(), nodes.end(), at);
      if (seen != nodes.end()) {
        cycle.assign(walk.begin() + (seen - nodes.begin()), walk.end());
        break;
      }
      nodes.push_back(at);
      cur = next_from(at);
      if (cur < 0) throw DomainError("open bus arcs violate flow balance; cannot form lines");
    }
    int w = remaining[cycle.front()];
    for (int a : cycle) w = std::min(w, remaining[a]);
    for (int a : cycle) remaining[a] -= w;
    std::vector<ArcId> arcs;
    for (int a : cycle) arcs.push_back(bus[a]);
    const std::string name = "B" + std::to_string(lines.size() + 1);
    lines.push_back(make_line(name, Mode::Bus, std::move(arcs), w, network, params, seed, 1000 + lines.size()));
  }
  return lines;
}

std::vector<TransitLine> build_rail_lines(const NetworkModel& network, const DesignParameters& params,
                                          std::uint64_t seed) {
  std::map<std::string, std::vector<std::pair<int, LocationId>>> members;
  for (const Location& loc : network.locations()) {
    for (const auto& m : loc.rail_lines) members[m.line].emplace_back(m.position, loc.id);
  }
  auto rail_arc = [&](LocationId a, LocationId b) -> std::optional<ArcId> {
    for (int f : network.rail_frequencies()) {
      if (auto id = network.find_arc(a, b, Mode::Rail, f)) return id;
    }
    return std::nullopt;
  };
  std::vector<TransitLine> lines;
  for (auto& [name, stations] : members) {
    std::sort(stations.begin(), stations.end());
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<ArcId> arcs;
      for (std::size_t i = 0; i + 1 < stations.size(); ++i) {
        const LocationId a = dir == 0 ? stations[i].second : stations[stations.size() - 1 - i].second;
        const LocationId b = dir == 0 ? stations[i + 1].second : stations[stations.size() - 2 - i].second;
        if (auto id = rail_arc(a, b)) arcs.push_back(*id);
      }
      if (arcs.empty()) continue;
      const int f = network.arc(arcs.front()).frequency;
      lines.push_back(make_line(name + (dir == 0 ? "+" : "-"), Mode::Rail, std::move(arcs), f, network, params, seed,
                                2000 + lines.size()));
    }
  }
  return lines;
}

std::vector<LocationId> seed_shuttles(const NetworkModel& network, std::span<const ShuttleRequest> requests,
                                      int fleet_size) {
  const auto hubs = network.hubs();
  if (hubs.empty()) throw DomainError("cannot seed shuttles without hubs");
  std::vector<double> weight(hubs.size(), 0.0);
  for (const auto& r : requests) {
    if (r.kind == RequestClass::Direct) continue;
    auto it = std::find(hubs.begin(), hubs.end(), r.hub);
    if (it != hubs.end()) weight[it - hubs.begin()] += 1.0;
  }
  double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  if (total == 0.0) {
    std::fill(weight.begin(), weight.end(), 1.0);
    total = static_cast<double>(weight.size());
  }
  std::vector<int> count(hubs.size());
  std::vector<std::pair<double, std::size_t>> rest;
  int assigned = 0;
  for (std::size_t h = 0; h < hubs.size(); ++h) {
    const double exact = fleet_size * weight[h] / total;
    count[h] = static_cast<int>(std::floor(exact));
    assigned += count[h];
    rest.emplace_back(-(exact - count[h]), h);
  }
  std::sort(rest.begin(), rest.end());
  for (std::size_t i = 0; assigned < fleet_size; ++i, ++assigned) ++count[rest[i % rest.size()].second];
  std::vector<LocationId> out;
  for (std::size_t h = 0; h < hubs.size(); ++h) out.insert(out.end(), count[h], hubs[h]);
  return out;
}

namespace {

enum EventKind { kShuttleArrive = 0, kPassengerArrive = 1, kEpoch = 2 };

struct Event {
  double time;
  int kind;
  int entity;
  int leg;

  bool operator>(const Event& o) const { return std::tie(time, kind, entity, leg) > std::tie(o.time, o.kind, o.entity, o.leg); }
};

struct SimShuttle {
  ShuttleState state;
  bool driving = false;
  LocationId from;
  double depart_s = 0.0;
  int onboard_at_departure = 0;
};

struct RunKey {
  int line;
  long run;
  int segment;
  auto operator<=>(const RunKey&) const = default;
};

class Simulation {
 public:
  Simulation(const NetworkModel& network, const DesignSolution& design, std::span<const Trip> trips,
             const DesignParameters& params, const Scenario& scenario, int fleet, const SimulationOptions& options)
      : net_(network), params_(params), scenario_(scenario), opt_(options) {
    if (fleet < 0) throw DomainError("fleet size must be nonnegative");
    opt_.dispatch.capacity = scenario.shuttle_capacity;
    opt_.dispatch.epoch_s = options.epoch_s;
    bus_cap_ = static_cast<int>(std::floor(options.bus_capacity * scenario.bus_capacity_scale + 1e-9));
    rail_cap_ = static_cast<int>(std::floor(options.rail_capacity * scenario.rail_capacity_scale + 1e-9));

    if (!scenario.bus_enabled && !design.open_bus_arcs.empty()) {
      throw DomainError("scenario '" + scenario.name + "' disables buses but the design opens bus arcs");
    }
    lines_ = build_bus_lines(network, design.z, params, scenario.seed);
    bus_lines_ = static_cast<int>(lines_.size());
    for (const auto& l : lines_) bus_vehicles_ += l.vehicles;
    for (auto& l : build_rail_lines(network, params, scenario.seed)) lines_.push_back(std::move(l));
    for (std::size_t l = 0; l < lines_.size(); ++l) {
      for (std::size_t i = 0; i < lines_[l].arcs.size(); ++i) {
        serving_[lines_[l].arcs[i].value].emplace_back(static_cast<int>(l), static_cast<int>(i));
      }
    }

    std::map<int, const TripPath*> path_of;
    for (const auto& p : design.paths) path_of[p.trip.value] = &p;
    for (const Trip& trip : trips) {
      auto it = path_of.find(trip.id.value);
      if (it == path_of.end()) throw DomainError("trip '" + trip.name + "' has no design path");
      for (ArcId a : it->second->arcs) {
        const Arc& arc = network.arc(a);
        if (arc.mode == Mode::Bus &&
            std::find(design.open_bus_arcs.begin(), design.open_bus_arcs.end(), a) == design.open_bus_arcs.end()) {
          throw DomainError("trip '" + trip.name + "' uses a bus arc that is not open");
        }
      }
      if (trip.request_time_s > params.extended_horizon_s) continue;
      for (int p = 0; p < trip.passengers; ++p) {
        PassengerRecord rec;
        rec.trip = trip.id;
        rec.passenger = p;
        rec.start_s = trip.request_time_s;
        for (ArcId a : it->second->arcs) {
          LegRecord leg;
          leg.arc = a;
          leg.mode = network.arc(a).mode;
          rec.legs.push_back(leg);
        }
        const int pid = static_cast<int>(passengers_.size());
        passengers_.push_back(std::move(rec));
        events_.push({trip.request_time_s, kPassengerArrive, pid, 0});
      }
    }

    const auto seed_requests = extract_requests(network, trips, design.paths, params);
    const auto positions = seed_shuttles(network, seed_requests, fleet);
    for (int s = 0; s < fleet; ++s) {
      SimShuttle sh;
      sh.state.id = s;
      sh.state.location = positions[s];
      shuttles_.push_back(std::move(sh));
    }
    for (long k = 0; k * options.epoch_s <= params.extended_horizon_s + 1e-9; ++k) {
      events_.push({static_cast<double>(k) * options.epoch_s, kEpoch, static_cast<int>(k), 0});
    }
  }

  SimulationReport run() {
    while (!events_.empty()) {
      const Event e = events_.top();
      events_.pop();
      if (e.time > params_.extended_horizon_s + 1e-9) break;
      switch (e.kind) {
        case kShuttleArrive:
          shuttle_arrive(e.entity, e.time);
          break;
        case kPassengerArrive:
          passenger_arrive(e.entity, e.leg, e.time);
          break;
        case kEpoch:
          epoch(e.time);
          break;
      }
    }
    return report();
  }

 private:
  void passenger_arrive(int pid, int leg, double now) {
    PassengerRecord& rec = passengers_[pid];
    if (leg == static_cast<int>(rec.legs.size())) {
      rec.done = true;
      return;
    }
    LegRecord& l = rec.legs[leg];
    l.arrive_s = now;
    const Arc& arc = net_.arc(l.arc);
    if (arc.mode == Mode::Shuttle) {
      ShuttleRequest r;
      r.id = static_cast<int>(requests_.size());
      r.trip = rec.trip;
      r.passenger = rec.passenger;
      r.leg = leg;
      r.origin = arc.origin;
      r.dest = arc.dest;
      r.request_time_s = now;
      const bool first = leg == 0;
      const bool last = leg + 1 == static_cast<int>(rec.legs.size());
      r.kind = first && !last ? RequestClass::ToHub : last && !first ? RequestClass::FromHub : RequestClass::Direct;
      r.hub = r.kind == RequestClass::ToHub ? arc.dest : r.kind == RequestClass::FromHub ? arc.origin : LocationId();
      requests_.push_back(r);
      request_owner_.emplace_back(pid, leg);
      pending_.push_back({r.id, 0});
      return;
    }
    board_fixed(pid, leg, now);
  }

  void board_fixed(int pid, int leg, double now) {
    LegRecord& l = passengers_[pid].legs[leg];
    auto it = serving_.find(l.arc.value);
    if (it == serving_.end()) return;  // no service: passenger strands
    double best_dep = std::numeric_limits<double>::infinity();
    RunKey best{};
    for (const auto& [li, seg] : it->second) {
      const TransitLine& line = lines_[li];
      const int cap = line.mode == Mode::Bus ? bus_cap_ : rail_cap_;
      if (cap <= 0) continue;
      const double base = line.phase_s + line.segment_offset_s[seg];
      for (long k = static_cast<long>(std::ceil((now - base) / line.headway_s - 1e-9));; ++k) {
        const double dep = base + static_cast<double>(k) * line.headway_s;
        if (dep > params_.extended_horizon_s + 1e-9 || dep >= best_dep) break;
        if (load_[RunKey{li, k, seg}] < cap) {
          best_dep = dep;
          best = RunKey{li, k, seg};
          break;
        }
      }
    }
    if (std::isinf(best_dep)) return;
    ++load_[best];
    const TransitLine& line = lines_[best.line];
    const long vehicles = std::max(1, line.vehicles);
    l.board_s = best_dep;
    l.alight_s = best_dep + net_.arc(l.arc).travel_time_s;
    l.vehicle = (line.mode == Mode::Bus ? "bus-" : "rail-") + line.name + "-" +
                std::to_string(((best.run % vehicles) + vehicles) % vehicles);
    events_.push({l.alight_s, kPassengerArrive, pid, leg + 1});
  }

  void start_drive(int s, double now) {
    SimShuttle& sh = shuttles_[s];
    const Action& next = sh.state.committed.front();
    sh.driving = true;
    sh.from = sh.state.location;
    sh.depart_s = now;
    sh.onboard_at_departure = static_cast<int>(sh.state.onboard.size());
    const double arrive = now + (next.location == sh.from ? 0.0 : net_.road().seconds(sh.from, next.location));
    sh.state.location = next.location;
    sh.state.ready_time_s = arrive;
    sh.state.first_locked = true;
    events_.push({arrive, kShuttleArrive, s, 0});
  }

  void shuttle_arrive(int s, double now) {
    SimShuttle& sh = shuttles_[s];
    if (sh.from != sh.state.location) {
      VehicleLeg leg;
      leg.vehicle = "shuttle-" + std::to_string(s);
      leg.mode = Mode::Shuttle;
      leg.from = sh.from;
      leg.to = sh.state.location;
      leg.depart_s = sh.depart_s;
      leg.arrive_s = now;
      leg.occupancy = sh.onboard_at_departure;
      leg.capacity = scenario_.shuttle_capacity;
      leg.miles = net_.road().miles(sh.from, sh.state.location);
      shuttle_legs_.push_back(leg);
    }
    sh.driving = false;
    auto& actions = sh.state.committed;
    while (!actions.empty() && actions.front().location == sh.state.location) {
      const Action a = actions.front();
      actions.erase(actions.begin());
      const auto [pid, leg] = request_owner_[a.request];
      LegRecord& l = passengers_[pid].legs[leg];
      if (a.kind == Action::Kind::Pickup) {
        l.board_s = now;
        l.vehicle = "shuttle-" + std::to_string(s);
        sh.state.onboard.push_back({a.request, now});
        max_onboard_ = std::max(max_onboard_, static_cast<int>(sh.state.onboard.size()));
      } else {
        l.alight_s = now;
        auto& ob = sh.state.onboard;
        ob.erase(std::remove_if(ob.begin(), ob.end(), [&](const OnboardRider& r) { return r.request == a.request; }),
                 ob.end());
        events_.push({now, kPassengerArrive, pid, leg + 1});
      }
    }
    sh.from = sh.state.location;
    sh.state.first_locked = false;
    sh.state.ready_time_s = now;
    if (!actions.empty()) start_drive(s, now);
  }

  void epoch(double now) {
    if (now <= params_.horizon_s + 1e-9) {
      int active = 0;
      for (const auto& sh : shuttles_) active += (sh.driving || !sh.state.committed.empty() || !sh.state.onboard.empty());
      active_.emplace_back(now, active);
    }
    if (pending_.empty() || shuttles_.empty()) {
      for (auto& p : pending_) ++p.epochs_waiting;
      return;
    }
    std::vector<ShuttleState> states;
    for (const auto& sh : shuttles_) {
      ShuttleState st = sh.state;
      if (!sh.driving) st.ready_time_s = std::max(st.ready_time_s, now);
      states.push_back(std::move(st));
    }
    const EpochDecision d = run_epoch(now, states, pending_, requests_, net_.road(), opt_.dispatch);
    if (opt_.record_dispatch_log) {
      log_.push_back({now, static_cast<int>(pending_.size()), static_cast<int>(d.served.size()),
                      static_cast<int>(d.postponed.size()), d.pool_size, d.objective});
    }
    for (std::size_t s = 0; s < shuttles_.size(); ++s) {
      shuttles_[s].state.committed = d.routes[s].actions;
      if (!shuttles_[s].driving && !shuttles_[s].state.committed.empty()) start_drive(static_cast<int>(s), now);
    }
    std::vector<PendingRequest> still;
    for (auto p : pending_) {
      if (std::binary_search(d.served.begin(), d.served.end(), p.request)) continue;
      ++p.epochs_waiting;
      still.push_back(p);
    }
    pending_ = std::move(still);
  }

  SimulationReport report() {
    SimulationReport rep;
    const double L = params_.horizon_s;
    rep.horizon_s = L;
    rep.extended_horizon_s = params_.extended_horizon_s;
    rep.fleet_size = static_cast<int>(shuttles_.size());
    rep.bus_vehicles = bus_vehicles_;
    rep.bus_lines = bus_lines_;
    rep.shuttle_miles_by_occupancy.assign(static_cast<std::size_t>(scenario_.shuttle_capacity) + 1, 0.0);

    double wait_sum = 0.0, travel_sum = 0.0, total_sum = 0.0;
    for (const auto& p : passengers_) {
      if (p.start_s < 0.0 || p.start_s > L + 1e-9) continue;
      ++rep.passengers_started;
      if (p.done) {
        ++rep.passengers_completed;
        wait_sum += p.wait_s();
        travel_sum += p.travel_s();
        total_sum += p.total_s();
      } else {
        ++rep.passengers_in_flight;
      }
      std::map<Mode, double> per_mode;
      for (const auto& l : p.legs) {
        const double w = l.board_s >= 0.0 ? l.board_s - l.arrive_s : std::numeric_limits<double>::infinity();
        per_mode[l.mode] += w;
      }
      for (const auto& [mode, w] : per_mode) {
        auto& bins = rep.wait_bins[mode];
        ++bins.trips;
        const double minutes = w / 60.0;
        ++bins.counts[minutes < 5.0 ? 0 : minutes < 10.0 ? 1 : 2];
      }
      rep.passengers.push_back(p);
    }
    rep.stranded = rep.passengers_in_flight;
    if (rep.passengers_completed > 0) {
      rep.mean_wait_s = wait_sum / rep.passengers_completed;
      rep.mean_travel_s = travel_sum / rep.passengers_completed;
      rep.mean_total_s = total_sum / rep.passengers_completed;
    }

    // Shuttle service level over requests posted in [0, L].
    std::vector<std::pair<double, double>> waits;
    for (std::size_t r = 0; r < requests_.size(); ++r) {
      if (requests_[r].request_time_s > L + 1e-9) continue;
      const auto [pid, leg] = request_owner_[r];
      const auto& l = passengers_[pid].legs[leg];
      const double w = l.board_s >= 0.0 ? l.board_s - l.arrive_s : params_.extended_horizon_s - l.arrive_s;
      waits.emplace_back(requests_[r].request_time_s, w);
      rep.max_shuttle_wait_s = std::max(rep.max_shuttle_wait_s, w);
    }
    std::sort(waits.begin(), waits.end());
    double window_sum = 0.0;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < waits.size(); ++lo) {
      while (hi < waits.size() && waits[hi].first < waits[lo].first + opt_.overwhelm_window_s) window_sum += waits[hi++].second;
      rep.peak_rolling_shuttle_wait_s = std::max(rep.peak_rolling_shuttle_wait_s, window_sum / static_cast<double>(hi - lo));
      window_sum -= waits[lo].second;
    }
    rep.overwhelmed = rep.peak_rolling_shuttle_wait_s > opt_.overwhelm_mean_wait_s ||
                      rep.max_shuttle_wait_s > opt_.overwhelm_max_wait_s;

    for (const auto& leg : shuttle_legs_) {
      if (leg.depart_s >= L) continue;
      rep.vehicle_legs.push_back(leg);
      rep.shuttle_miles += leg.miles;
      const std::size_t occ = std::min<std::size_t>(leg.occupancy, rep.shuttle_miles_by_occupancy.size() - 1);
      rep.shuttle_miles_by_occupancy[occ] += leg.miles;
    }
    for (const auto& [key, load] : load_) {
      const TransitLine& line = lines_[key.line];
      const double dep = line.phase_s + line.segment_offset_s[key.segment] + static_cast<double>(key.run) * line.headway_s;
      if (dep >= L || load == 0) continue;
      const Arc& arc = net_.arc(line.arcs[key.segment]);
      const long vehicles = std::max(1, line.vehicles);
      VehicleLeg leg;
      leg.vehicle = (line.mode == Mode::Bus ? "bus-" : "rail-") + line.name + "-" +
                    std::to_string(((key.run % vehicles) + vehicles) % vehicles);
      leg.mode = line.mode;
      leg.from = arc.origin;
      leg.to = arc.dest;
      leg.depart_s = dep;
      leg.arrive_s = dep + arc.travel_time_s;
      leg.occupancy = load;
      leg.capacity = line.mode == Mode::Bus ? bus_cap_ : rail_cap_;
      leg.miles = arc.distance_mi;
      rep.vehicle_legs.push_back(leg);
    }
    std::stable_sort(rep.vehicle_legs.begin(), rep.vehicle_legs.end(), [](const auto& a, const auto& b) {
      return std::tie(a.depart_s, a.vehicle) < std::tie(b.depart_s, b.vehicle);
    });
    for (const auto& leg : rep.vehicle_legs) rep.capacity_violations += leg.occupancy > leg.capacity;
    if (max_onboard_ > scenario_.shuttle_capacity) ++rep.capacity_violations;
    rep.active_shuttles = std::move(active_);
    rep.dispatch_log = std::move(log_);
    return rep;
  }

  const NetworkModel& net_;
  const DesignParameters& params_;
  const Scenario& scenario_;
  SimulationOptions opt_;
  int bus_cap_ = 0;
  int rail_cap_ = 0;
  int bus_lines_ = 0;
  int bus_vehicles_ = 0;
  int max_onboard_ = 0;
  std::vector<TransitLine> lines_;
  std::map<int, std::vector<std::pair<int, int>>> serving_;
  std::map<RunKey, int> load_;
  std::vector<PassengerRecord> passengers_;
  std::vector<ShuttleRequest> requests_;
  std::vector<std::pair<int, int>> request_owner_;
  std::vector<PendingRequest> pending_;
  std::vector<SimShuttle> shuttles_;
  std::vector<VehicleLeg> shuttle_legs_;
  std::vector<std::pair<double, int>> active_;
  std::vector<DispatchLogRow> log_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
};

}  // namespace

SimulationReport simulate(const NetworkModel& network, const DesignSolution& design, std::span<const Trip> trips,
                          const DesignParameters& params, const Scenario& scenario, int fleet_size,
                          const SimulationOptions& options) {
  params.validate();
  scenario.validate();
  Simulation sim(network, design, trips, params, scenario, fleet_size, options);
  return sim.run();
}

AutoscaleResult autoscale_fleet(int initial_fleet, const std::function<SimulationReport(int)>& run,
                                int max_escalations) {
  AutoscaleResult out;
  out.fleet_size = std::max(1, initial_fleet);
  out.report = run(out.fleet_size);
  while (out.report.overwhelmed) {
    if (out.escalations == max_escalations) {
      out.failed = true;
      break;
    }
    out.fleet_size = static_cast<int>(std::ceil(out.fleet_size * 1.1 - 1e-9));
    ++out.escalations;
    out.report = run(out.fleet_size);
  }
  return out;
}

}  // namespace odmts
