#include "outputs.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "odmts/csv.hpp"
#include "odmts/errors.hpp"

namespace odmts::cli {

using nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string name_of(const NetworkModel& net, LocationId id) { return net.location(id).name; }

std::string num(double v) { return format_number(v); }

ordered_json arc_json(const NetworkModel& net, ArcId id) {
  const Arc& a = net.arc(id);
  ordered_json j;
  j["from"] = name_of(net, a.origin);
  j["to"] = name_of(net, a.dest);
  j["mode"] = std::string(to_string(a.mode));
  j["frequency_per_horizon"] = a.frequency;
  j["travel_time_s"] = a.travel_time_s;
  j["distance_mi"] = a.distance_mi;
  return j;
}

ordered_json wait_bins_json(const SimulationReport& rep) {
  ordered_json out = ordered_json::object();
  for (const auto& [mode, bins] : rep.wait_bins) {
    const auto pct = bins.percentages();
    ordered_json j;
    j["trips"] = bins.trips;
    j["pct_0_5_min"] = pct[0];
    j["pct_5_10_min"] = pct[1];
    j["pct_over_10_min"] = pct[2];
    j["pct_total"] = pct[0] + pct[1] + pct[2];
    out[std::string(to_string(mode))] = j;
  }
  return out;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
}

std::string design_json(const NetworkModel& network, const DesignSolution& design, const DesignParameters& params) {
  ordered_json j;
  j["objective_total_usd"] = design.objective_total;
  j["fixed_cost_part_usd"] = design.fixed_cost_part;
  j["passenger_part_usd"] = design.passenger_part;
  j["lower_bound_usd"] = design.lower_bound;
  j["optimal"] = design.optimal;
  j["iterations"] = design.iterations;
  ordered_json p;
  p["alpha"] = params.alpha;
  p["horizon_h"] = hours(params.horizon_s);
  p["extended_horizon_h"] = hours(params.extended_horizon_s);
  p["transfer_limit"] = params.transfer_limit;
  p["bus_cost_usd_per_h"] = params.bus_cost_per_hour;
  p["shuttle_cost_usd_per_mi"] = params.shuttle_cost_per_mile;
  j["parameters"] = p;
  ordered_json arcs = ordered_json::array();
  for (ArcId a : design.open_bus_arcs) arcs.push_back(arc_json(network, a));
  j["open_bus_arcs"] = arcs;
  ordered_json paths = ordered_json::array();
  for (const auto& path : design.paths) {
    ordered_json pj;
    pj["trip"] = path.trip.value;
    pj["cost_usd"] = path.cost;
    ordered_json legs = ordered_json::array();
    for (ArcId a : path.arcs) legs.push_back(arc_json(network, a));
    pj["legs"] = legs;
    paths.push_back(pj);
  }
  j["paths"] = paths;
  return dump(j);
}

std::vector<double> read_design_z(const std::filesystem::path& path, const NetworkModel& network) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open design file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  std::vector<double> z(network.bus_arcs().size(), 0.0);
  if (!j.contains("open_bus_arcs") || !j["open_bus_arcs"].is_array()) {
    throw InputError(path.string() + ": missing 'open_bus_arcs'");
  }
  for (const auto& a : j["open_bus_arcs"]) {
    try {
      const LocationId from = network.location_id(a.at("from").get<std::string>());
      const LocationId to = network.location_id(a.at("to").get<std::string>());
      const int f = a.at("frequency_per_horizon").get<int>();
      auto id = network.find_arc(from, to, Mode::Bus, f);
      if (!id) throw InputError(path.string() + ": bus arc not in the network");
      z[network.bus_index(*id)] = 1.0;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  }
  return z;
}

std::string benders_trace_csv(const DesignSolution& design) {
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"iteration", "phase", "lower_bound_usd", "upper_bound_usd", "cuts_added"});
  for (const auto& r : design.trace) {
    w.row({std::to_string(r.iteration), r.phase, num(r.lower_bound), num(r.upper_bound), std::to_string(r.cuts_added)});
  }
  return out.str();
}

std::string diagnostics_json(const OdDiagnostics& d) {
  ordered_json j;
  j["transactions"] = d.transactions;
  j["legs"] = d.legs;
  j["dropped_unmatched_exits"] = d.unmatched_exits;
  j["dropped_unmatched_entries"] = d.unmatched_entries;
  j["alight_from_next_boarding"] = d.alight_from_next_boarding;
  j["alight_sampled_from_counts"] = d.alight_sampled;
  j["alight_uniform_fallback"] = d.alight_uniform_fallback;
  j["unresolved_legs"] = d.unresolved_legs;
  j["cash_riders"] = d.cash_riders;
  j["journeys"] = d.journeys;
  j["dropped_zero_length_journeys"] = d.zero_length_journeys;
  j["passengers"] = d.passengers;
  j["trips"] = d.trips;
  j["uniform_fallback_routes"] = d.fallback_routes;
  return dump(j);
}

std::string routes_json(const NetworkModel& network, const RidesharePlan& plan) {
  ordered_json j;
  j["total_cost_usd"] = plan.total_cost;
  j["requests"] = plan.requests.size();
  ordered_json routes = ordered_json::array();
  for (const auto& r : plan.routes) {
    ordered_json rj;
    rj["id"] = r.id;
    rj["requests"] = r.requests;
    rj["start_time_s"] = r.start_time_s;
    rj["end_time_s"] = r.end_time_s;
    rj["distance_mi"] = r.miles;
    rj["cost_usd"] = r.cost;
    ordered_json stops = ordered_json::array();
    for (const auto& s : r.stops) {
      ordered_json sj;
      sj["location"] = name_of(network, s.location);
      sj["time_s"] = s.time_s;
      sj["pickups"] = s.pickups;
      sj["dropoffs"] = s.dropoffs;
      stops.push_back(sj);
    }
    rj["stops"] = stops;
    routes.push_back(rj);
  }
  j["routes"] = routes;
  return dump(j);
}

std::string fleet_json(const RidesharePlan& plan, const FleetPlan& fleet) {
  ordered_json j;
  j["fleet_size"] = fleet.size;
  j["routes"] = plan.routes.size();
  ordered_json chains = ordered_json::array();
  for (const auto& c : fleet.chains) chains.push_back(c);
  j["chains"] = chains;
  return dump(j);
}

std::string report_json(const NetworkModel& /*network*/, const ScenarioOutcome& o) {
  const SimulationReport& rep = o.autoscale.report;
  const Scenario& sc = o.config.scenario;
  ordered_json j;
  ordered_json s;
  s["name"] = sc.name;
  s["ridership_fraction"] = sc.ridership_fraction;
  s["shuttle_capacity_seats"] = sc.shuttle_capacity;
  s["bus_capacity_pct"] = sc.bus_capacity_scale * 100.0;
  s["rail_capacity_pct"] = sc.rail_capacity_scale * 100.0;
  s["bus_enabled"] = sc.bus_enabled;
  s["cleaning"] = sc.cleaning;
  s["fare_share"] = sc.fare_share;
  s["seed"] = sc.seed;
  j["scenario"] = s;
  j["workflow"] = o.redesigned ? "redesign" : "fixed-design";
  j["horizon_h"] = hours(rep.horizon_s);
  j["extended_horizon_h"] = hours(rep.extended_horizon_s);
  j["design_objective_usd"] = o.design.objective_total;
  if (o.measured_cost_per_mile) j["measured_shuttle_cost_usd_per_mi"] = *o.measured_cost_per_mile;

  ordered_json fleet;
  fleet["rideshare_routes"] = o.rideshare.routes.size();
  fleet["initial_shuttles"] = o.initial_fleet;
  fleet["final_shuttles"] = o.autoscale.fleet_size;
  fleet["escalations"] = o.autoscale.escalations;
  fleet["autoscale_failed"] = o.autoscale.failed;
  fleet["budget_limited"] = o.budget_limited;
  fleet["bus_lines"] = rep.bus_lines;
  fleet["buses"] = rep.bus_vehicles;
  j["fleet"] = fleet;

  ordered_json p;
  p["sampled"] = o.passengers;
  p["started"] = rep.passengers_started;
  p["completed"] = rep.passengers_completed;
  p["in_flight_at_extended_horizon"] = rep.passengers_in_flight;
  p["stranded"] = rep.stranded;
  p["mean_wait_min"] = rep.mean_wait_s / 60.0;
  p["mean_in_vehicle_min"] = rep.mean_travel_s / 60.0;
  p["mean_total_min"] = rep.mean_total_s / 60.0;
  j["passengers"] = p;
  j["wait_bins"] = wait_bins_json(rep);

  ordered_json sh;
  sh["distance_mi"] = rep.shuttle_miles;
  ordered_json by_occ = ordered_json::object();
  for (std::size_t k = 0; k < rep.shuttle_miles_by_occupancy.size(); ++k) {
    by_occ[std::to_string(k)] = rep.shuttle_miles_by_occupancy[k];
  }
  sh["distance_mi_by_occupancy"] = by_occ;
  sh["max_wait_min"] = rep.max_shuttle_wait_s / 60.0;
  sh["peak_rolling_mean_wait_min"] = rep.peak_rolling_shuttle_wait_s / 60.0;
  sh["overwhelmed"] = rep.overwhelmed;
  ordered_json active = ordered_json::array();
  for (const auto& [t, n] : rep.active_shuttles) active.push_back({{"time_s", t}, {"active", n}});
  sh["active_over_time"] = active;
  j["shuttles"] = sh;
  j["capacity_violations"] = rep.capacity_violations;

  ordered_json cost;
  cost["hours"] = o.cost.hours;
  cost["bus_rate_usd_per_h"] = o.cost.bus_rate;
  cost["shuttle_rate_usd_per_h"] = o.cost.shuttle_rate;
  cost["bus_usd"] = o.cost.bus_usd;
  cost["shuttle_usd"] = o.cost.shuttle_usd;
  cost["total_usd"] = o.cost.total_usd();
  j["cost"] = cost;
  ordered_json b;
  b["budget_usd"] = o.budget.budget;
  b["within_budget"] = o.budget.within_budget();
  j["budget"] = b;
  return dump(j);
}

std::string passengers_csv(const NetworkModel& network, const SimulationReport& rep) {
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"trip", "passenger", "start_time_s", "completed", "legs", "modes", "wait_s", "in_vehicle_s", "total_s",
         "end_time_s"});
  for (const auto& p : rep.passengers) {
    std::string modes;
    for (const auto& l : p.legs) {
      if (!modes.empty()) modes += '>';
      modes += to_string(l.mode);
    }
    const double end = p.done ? p.legs.empty() ? p.start_s : p.legs.back().alight_s : -1.0;
    w.row({std::to_string(p.trip.value), std::to_string(p.passenger), num(p.start_s), p.done ? "1" : "0",
           std::to_string(p.legs.size()), modes, num(p.wait_s()), num(p.travel_s()), num(p.done ? p.total_s() : -1.0),
           num(end)});
  }
  (void)network;
  return out.str();
}

std::string occupancy_csv(const NetworkModel& network, const SimulationReport& rep) {
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"vehicle", "mode", "from", "to", "depart_time_s", "arrive_time_s", "occupancy_pax", "capacity_pax",
         "distance_mi"});
  for (const auto& l : rep.vehicle_legs) {
    w.row({l.vehicle, std::string(to_string(l.mode)), name_of(network, l.from), name_of(network, l.to), num(l.depart_s),
           num(l.arrive_s), std::to_string(l.occupancy), std::to_string(l.capacity), num(l.miles)});
  }
  return out.str();
}

std::string dispatch_log_csv(const SimulationReport& rep) {
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"time_s", "pending_requests", "served_requests", "postponed_requests", "candidate_routes", "objective_s"});
  for (const auto& r : rep.dispatch_log) {
    w.row({num(r.time_s), std::to_string(r.pending), std::to_string(r.served), std::to_string(r.postponed),
           std::to_string(r.pool), num(r.objective)});
  }
  return out.str();
}

std::string roadusage_geojson(const NetworkModel& network, const ScenarioOutcome& o) {
  // Directed segment -> (mode -> vehicle trips, passengers).
  struct Use {
    long vehicles = 0;
    long passengers = 0;
  };
  std::map<std::tuple<int, int, int>, Use> use;
  const double L = o.params.horizon_s;
  const SimulationReport& rep = o.autoscale.report;
  for (const auto& l : rep.vehicle_legs) {
    auto& u = use[{l.from.value, l.to.value, static_cast<int>(l.mode)}];
    if (l.mode == Mode::Shuttle) ++u.vehicles;
    u.passengers += l.occupancy;
  }
  // Fixed routes run whether or not anyone rides.
  auto lines = build_bus_lines(network, o.design.z, o.params, o.config.scenario.seed);
  for (auto& r : build_rail_lines(network, o.params, o.config.scenario.seed)) lines.push_back(std::move(r));
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.arcs.size(); ++i) {
      const Arc& a = network.arc(line.arcs[i]);
      const double first = line.phase_s + line.segment_offset_s[i];
      const long runs = first >= L ? 0 : static_cast<long>(std::ceil((L - first) / line.headway_s - 1e-9));
      use[{a.origin.value, a.dest.value, static_cast<int>(line.mode)}].vehicles += runs;
    }
  }
  ordered_json features = ordered_json::array();
  for (const auto& [key, u] : use) {
    const auto& [from, to, mode] = key;
    const Location& a = network.location(LocationId(from));
    const Location& b = network.location(LocationId(to));
    ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "LineString"}, {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}};
    f["properties"] = {{"from", a.name},
                       {"to", b.name},
                       {"mode", std::string(to_string(static_cast<Mode>(mode)))},
                       {"vehicle_trips", u.vehicles},
                       {"passenger_trips", u.passengers}};
    features.push_back(f);
  }
  ordered_json j;
  j["type"] = "FeatureCollection";
  j["features"] = features;
  return dump(j);
}

std::string budget_report_json(const BudgetReport& b) {
  ordered_json j;
  j["scenario"] = b.scenario;
  j["baseline_budget_usd"] = b.baseline_budget;
  j["ridership_fraction"] = b.ridership_fraction;
  j["fare_share"] = b.fare_share;
  j["opex_share"] = b.opex_share;
  j["budget_usd"] = b.budget;
  j["system_cost_usd"] = b.system_cost;
  j["bus_cost_usd"] = b.bus_cost;
  j["shuttle_rate_usd_per_h"] = b.shuttle_rate;
  j["hours"] = b.hours;
  j["shuttles"] = b.fleet;
  if (b.max_fleet_within_budget) {
    j["max_shuttles_within_budget"] = *b.max_fleet_within_budget;
  } else {
    j["max_shuttles_within_budget"] = nullptr;
  }
  j["within_budget"] = b.within_budget();
  return dump(j);
}

void write_scenario_outputs(const std::filesystem::path& dir, const NetworkModel& network,
                            const ScenarioOutcome& outcome) {
  const auto& rep = outcome.autoscale.report;
  write_text(dir / "design.json", design_json(network, outcome.design, outcome.params));
  write_text(dir / "routes.json", routes_json(network, outcome.rideshare));
  write_text(dir / "fleet.json", fleet_json(outcome.rideshare, outcome.fleet));
  write_text(dir / "report.json", report_json(network, outcome));
  write_text(dir / "passengers.csv", passengers_csv(network, rep));
  write_text(dir / "occupancy.csv", occupancy_csv(network, rep));
  write_text(dir / "dispatch_log.csv", dispatch_log_csv(rep));
  write_text(dir / "roadusage.geojson", roadusage_geojson(network, outcome));
  write_text(dir / "budget_report.json", budget_report_json(outcome.budget));
}

}  // namespace odmts::cli
