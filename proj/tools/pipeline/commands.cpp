#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <iostream>
#include <map>

#include "json.hpp"
#include "odmts/csv.hpp"
#include "odmts/errors.hpp"
#include "outputs.hpp"

namespace odmts::cli {

Inputs load_inputs(const PipelineConfig& config) {
  Inputs in;
  in.locations = read_locations(config.resolve(config.locations).string());
  in.index = std::make_unique<LocationIndex>(in.locations);
  in.road = std::make_shared<const TravelMatrix>(read_matrix(config.resolve(config.matrix).string(), *in.index));
  in.trips = read_trips(config.resolve(config.trips).string(), *in.index);
  NetworkOptions opt = config.network;
  if (config.rail_matrix) {
    opt.rail = std::make_shared<const TravelMatrix>(read_matrix(config.resolve(*config.rail_matrix).string(), *in.index));
  }
  in.network = std::make_shared<const NetworkModel>(build_network(in.locations, in.trips, in.road, opt));
  spdlog::info("network: {} locations, {} hubs, {} arcs ({} bus), {} trips", in.network->locations().size(),
               in.network->hubs().size(), in.network->arcs().size(), in.network->bus_arcs().size(), in.trips.size());
  return in;
}

std::vector<Transaction> read_transactions(const std::filesystem::path& path, const LocationIndex& index) {
  const CsvTable t = CsvTable::read_file(path.string());
  const auto c_card = t.column("card_id"), c_time = t.column("time_s"), c_term = t.column("terminal"),
             c_kind = t.column("kind");
  const bool has_route = t.has_column("route");
  std::vector<Transaction> out;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    Transaction tx;
    tx.card_id = t.text(r, c_card);
    tx.time_s = t.number(r, c_time);
    const std::string where = t.source() + ":" + std::to_string(t.line(r));
    tx.terminal = index.at(t.text(r, c_term), where);
    auto kind = parse_transaction_kind(t.text(r, c_kind));
    if (!kind) throw InputError(where + ": unknown transaction kind '" + t.text(r, c_kind) + "'");
    tx.kind = *kind;
    if (has_route) tx.route = t.text(r, t.column("route"));
    if (tx.kind == TransactionKind::BusBoard && tx.route.empty()) throw InputError(where + ": bus boarding needs a route");
    out.push_back(std::move(tx));
  }
  return out;
}

std::vector<ApcRecord> read_apc(const std::filesystem::path& path, const LocationIndex& index) {
  const CsvTable t = CsvTable::read_file(path.string());
  const auto c_stop = t.column("stop"), c_route = t.column("route"), c_seq = t.column("sequence"),
             c_time = t.column("time_s"), c_on = t.column("boardings"), c_off = t.column("alightings");
  std::vector<ApcRecord> out;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    ApcRecord a;
    a.stop = index.at(t.text(r, c_stop), t.source() + ":" + std::to_string(t.line(r)));
    a.route = t.text(r, c_route);
    a.sequence = static_cast<int>(t.integer(r, c_seq));
    a.time_s = t.number(r, c_time);
    a.boardings = static_cast<int>(t.integer(r, c_on));
    a.alightings = static_cast<int>(t.integer(r, c_off));
    out.push_back(std::move(a));
  }
  return out;
}

CostSummary cost_summary(int buses, int shuttles, double horizon_s, const CostModel& model, bool cleaning) {
  CostSummary c;
  c.hours = hours(horizon_s);
  c.buses = buses;
  c.shuttles = shuttles;
  c.bus_rate = vehicle_hourly_cost(Mode::Bus, model, cleaning);
  c.shuttle_rate = vehicle_hourly_cost(Mode::Shuttle, model, cleaning);
  c.bus_usd = system_cost(buses, 0, c.hours, model, cleaning);
  c.shuttle_usd = system_cost(0, shuttles, c.hours, model, cleaning);
  return c;
}

BudgetReport budget_report(const std::string& name, double baseline, const Scenario& scenario, const CostSummary& cost,
                           const CostModel& model) {
  BudgetReport b;
  b.scenario = name;
  b.baseline_budget = baseline;
  b.ridership_fraction = scenario.ridership_fraction;
  b.fare_share = scenario.fare_share;
  b.opex_share = model.opex_share;
  b.budget = scenario_budget(baseline, scenario.ridership_fraction, scenario.fare_share, model.opex_share);
  b.system_cost = cost.total_usd();
  b.bus_cost = cost.bus_usd;
  b.shuttle_rate = cost.shuttle_rate;
  b.hours = cost.hours;
  b.fleet = cost.shuttles;
  if (b.budget >= b.bus_cost) b.max_fleet_within_budget = fit_fleet_to_budget(b.budget, b.bus_cost, b.shuttle_rate, b.hours);
  return b;
}

DesignSolution design_for(const NetworkModel& network, std::span<const Trip> trips, const DesignParameters& params,
                          bool buses, const BendersOptions& options) {
  if (!buses) {
    const std::vector<double> closed(network.bus_arcs().size(), 0.0);
    return evaluate_design(network, trips, params, closed, options.threads);
  }
  return benders_solve(network, trips, params, options);
}

namespace {

void simulate_and_price(const PipelineConfig& config, const Inputs& in, ScenarioOutcome& o,
                        std::optional<double> baseline_budget) {
  const Scenario& sc = o.config.scenario;
  const NetworkModel& net = *in.network;
  RideshareOptions ro = config.rideshare;
  ro.capacity = sc.shuttle_capacity;
  ro.alpha = o.params.alpha;
  ro.cost_per_mile = o.params.shuttle_cost_per_mile;
  o.rideshare = plan_rideshare(extract_requests(net, o.trips, o.design.paths, o.params), net.road(), ro);
  o.fleet = size_fleet(o.rideshare.routes, net.road());
  o.initial_fleet = o.config.fleet.value_or(std::max(1, o.fleet.size));
  spdlog::info("[{}] {} shuttle requests, {} rideshare routes, fleet estimate {}", sc.name,
               o.rideshare.requests.size(), o.rideshare.routes.size(), o.fleet.size);

  o.autoscale = autoscale_fleet(
      o.initial_fleet,
      [&](int n) {
        spdlog::info("[{}] simulating with {} shuttles", sc.name, n);
        return simulate(net, o.design, o.trips, o.params, sc, n, config.simulation);
      },
      config.max_escalations);
  const auto& rep = o.autoscale.report;
  o.cost = cost_summary(rep.bus_vehicles, o.autoscale.fleet_size, o.params.horizon_s, config.cost, sc.cleaning);
  o.budget = budget_report(sc.name, baseline_budget.value_or(o.cost.total_usd()), sc, o.cost, config.cost);
  if (!o.config.fit_budget || o.budget.within_budget()) return;
  const int affordable = o.budget.max_fleet_within_budget.value_or(0);
  if (affordable >= o.autoscale.fleet_size) return;
  spdlog::info("[{}] fleet {} exceeds the budget; simulating {} shuttles", sc.name, o.autoscale.fleet_size, affordable);
  o.budget_limited = true;
  o.autoscale.fleet_size = affordable;
  o.autoscale.report = simulate(net, o.design, o.trips, o.params, sc, affordable, config.simulation);
  o.cost = cost_summary(o.autoscale.report.bus_vehicles, affordable, o.params.horizon_s, config.cost, sc.cleaning);
  o.budget = budget_report(sc.name, o.budget.baseline_budget, sc, o.cost, config.cost);
}

}  // namespace

ScenarioOutcome evaluate_scenario(const PipelineConfig& config, const Inputs& in, const DesignSolution& baseline_design,
                                  const ScenarioConfig& scenario, bool redesign,
                                  std::optional<double> baseline_budget) {
  const Scenario& sc = scenario.scenario;
  sc.validate();
  const NetworkModel& net = *in.network;

  // Strata: whether the baseline path rides a bus.
  std::map<int, int> bus_trip;
  for (const auto& p : baseline_design.paths) {
    int uses = 0;
    for (ArcId a : p.arcs) uses |= net.arc(a).mode == Mode::Bus;
    bus_trip[p.trip.value] = uses;
  }
  std::vector<int> strata;
  for (const auto& t : in.trips) strata.push_back(bus_trip[t.id.value]);

  ScenarioOutcome o;
  o.config = scenario;
  o.params = config.params;
  o.trips = sample_demand(in.trips, sc.ridership_fraction, sc.seed, strata);
  for (const auto& t : o.trips) o.passengers += t.passengers;
  spdlog::info("[{}] sampled {} passengers in {} trips", sc.name, o.passengers, o.trips.size());

  std::vector<double> z = baseline_design.z;
  if (!sc.bus_enabled) std::fill(z.begin(), z.end(), 0.0);
  o.design = evaluate_design(net, o.trips, o.params, z, config.benders.threads);
  simulate_and_price(config, in, o, baseline_budget);
  if (!redesign) return o;

  // Redesign with measured shuttle cost per mile and the scenario's bus rate.
  const double miles = o.autoscale.report.shuttle_miles;
  ScenarioOutcome r;
  r.config = scenario;
  r.redesigned = true;
  r.trips = o.trips;
  r.passengers = o.passengers;
  r.params = config.params;
  r.measured_cost_per_mile = miles > 0.0 ? o.cost.shuttle_usd / miles : config.params.shuttle_cost_per_mile;
  r.params.shuttle_cost_per_mile = *r.measured_cost_per_mile;
  r.params.bus_cost_per_hour = vehicle_hourly_cost(Mode::Bus, config.cost, sc.cleaning);
  r.design = design_for(net, r.trips, r.params, sc.bus_enabled, config.benders);
  simulate_and_price(config, in, r, baseline_budget);
  return r;
}

int run_estimate(const PipelineConfig& config) {
  const auto locations = read_locations(config.resolve(config.locations).string());
  const LocationIndex index(locations);
  const auto tx = read_transactions(config.resolve(config.transactions), index);
  std::vector<ApcRecord> apc;
  if (!config.apc.empty()) apc = read_apc(config.resolve(config.apc), index);
  const OdResult r = estimate_od(tx, apc, locations, config.od);
  for (const auto& route : r.diagnostics.fallback_routes) {
    spdlog::warn("route {} has no alighting counts downstream of some boardings; sampled uniformly", route);
  }
  const auto out = config.resolve(config.output_dir);
  std::ostringstream trips;
  write_trips(trips, r.trips, index);
  write_text(out / "trips.csv", trips.str());
  write_text(out / "diagnostics.json", diagnostics_json(r.diagnostics));
  spdlog::info("estimated {} trips ({} passengers) from {} transactions", r.trips.size(), r.diagnostics.passengers,
               r.diagnostics.transactions);
  return kOk;
}

int run_design(const PipelineConfig& config) {
  const Inputs in = load_inputs(config);
  const DesignSolution d = benders_solve(*in.network, in.trips, config.params, config.benders);
  const auto out = config.resolve(config.output_dir);
  write_text(out / "design.json", design_json(*in.network, d, config.params));
  write_text(out / "benders_trace.csv", benders_trace_csv(d));
  spdlog::info("design: objective {:.4f} (fixed {:.4f}), {} bus arcs open, {} iterations{}", d.objective_total,
               d.fixed_cost_part, d.open_bus_arcs.size(), d.iterations, d.optimal ? "" : ", NOT converged");
  return d.optimal ? kOk : kSolverFailure;
}

int run_evaluate(const PipelineConfig& config, bool redesign, const std::optional<std::filesystem::path>& design_file,
                 const std::optional<int>& fleet_override) {
  const Inputs in = load_inputs(config);
  DesignSolution baseline;
  if (design_file) {
    const auto z = read_design_z(*design_file, *in.network);
    baseline = evaluate_design(*in.network, in.trips, config.params, z, config.benders.threads);
  } else {
    baseline = benders_solve(*in.network, in.trips, config.params, config.benders);
    if (!baseline.optimal) spdlog::warn("baseline design did not converge; using the incumbent");
  }
  const auto out = config.resolve(config.output_dir);
  std::optional<double> budget = config.baseline_budget;
  int code = kOk;
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (ScenarioConfig sc : config.scenarios) {
    if (fleet_override) sc.fleet = *fleet_override;
    const ScenarioOutcome o = evaluate_scenario(config, in, baseline, sc, redesign, budget);
    if (!budget) budget = o.cost.total_usd();
    write_scenario_outputs(out / sc.scenario.name, *in.network, o);
    const auto& rep = o.autoscale.report;
    summary.push_back({{"scenario", sc.scenario.name},
                       {"shuttles", o.autoscale.fleet_size},
                       {"buses", rep.bus_vehicles},
                       {"stranded", rep.stranded},
                       {"peak_rolling_mean_shuttle_wait_min", rep.peak_rolling_shuttle_wait_s / 60.0},
                       {"max_shuttle_wait_min", rep.max_shuttle_wait_s / 60.0},
                       {"cost_usd", o.cost.total_usd()},
                       {"budget_usd", o.budget.budget},
                       {"autoscale_failed", o.autoscale.failed}});
    if (rep.stranded > 0 || o.autoscale.failed) {
      spdlog::error("[{}] service failure: {} stranded, autoscale {}", sc.scenario.name, rep.stranded,
                    o.autoscale.failed ? "failed" : "ok");
      code = kServiceFailure;
    }
  }
  write_text(out / "summary.json", summary.dump(2) + "\n");
  return code;
}

int run_cost(const CostModel& model, int buses, int shuttles, double hours_, bool cleaning) {
  nlohmann::ordered_json j;
  for (Mode m : {Mode::Bus, Mode::Shuttle}) {
    const HourlyCost c = hourly_cost_breakdown(m, model, cleaning);
    j[std::string(to_string(m)) + "_usd_per_h"] = {{"wages", c.wages},
                                                   {"fringe", c.fringe},
                                                   {"maintenance", c.maintenance},
                                                   {"depreciation", c.depreciation},
                                                   {"cleaning", c.cleaning},
                                                   {"total", c.total()}};
  }
  j["buses"] = buses;
  j["shuttles"] = shuttles;
  j["hours"] = hours_;
  j["system_cost_usd"] = system_cost(buses, shuttles, hours_, model, cleaning);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int run_budget(const CostModel& model, double baseline, double fraction, double fare_share,
               std::optional<double> bus_cost, double hours_, bool cleaning) {
  nlohmann::ordered_json j;
  const double b = scenario_budget(baseline, fraction, fare_share, model.opex_share);
  j["baseline_budget_usd"] = baseline;
  j["ridership_fraction"] = fraction;
  j["fare_share"] = fare_share;
  j["opex_share"] = model.opex_share;
  j["budget_usd"] = b;
  if (bus_cost) {
    j["bus_cost_usd"] = *bus_cost;
    j["max_shuttles_within_budget"] =
        fit_fleet_to_budget(b, *bus_cost, vehicle_hourly_cost(Mode::Shuttle, model, cleaning), hours_);
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace odmts::cli
