#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "odmts/errors.hpp"

namespace odmts::cli {

using nlohmann::json;

std::filesystem::path PipelineConfig::resolve(const std::filesystem::path& p) const {
  return p.is_absolute() ? p : base_dir / p;
}

PipelineConfig default_config() {
  PipelineConfig c;
  c.scenarios.push_back({});
  return c;
}

namespace {

class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw InputError("config: '" + name_ + "' must be an object");
  }
  ~Section() = default;

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw InputError("config: '" + name_ + "." + key + "' has the wrong type");
    }
  }

  void path(const char* key, std::filesystem::path& out) {
    std::string s;
    const bool present = j_.contains(key);
    get(key, s);
    if (present) out = s;
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& child(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw InputError("config: unknown key '" + name_ + "." + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void read_scenario(const json& j, ScenarioConfig& out) {
  Section s(j, "scenarios[]");
  Scenario& sc = out.scenario;
  double bus_pct = sc.bus_capacity_scale * 100.0, rail_pct = sc.rail_capacity_scale * 100.0;
  s.get("name", sc.name);
  s.get("ridership_fraction", sc.ridership_fraction);
  s.get("shuttle_capacity", sc.shuttle_capacity);
  s.get("bus_capacity_pct", bus_pct);
  s.get("rail_capacity_pct", rail_pct);
  s.get("bus_enabled", sc.bus_enabled);
  s.get("cleaning", sc.cleaning);
  s.get("fare_share", sc.fare_share);
  s.get("seed", sc.seed);
  if (s.has("fleet")) {
    int f = 0;
    s.get("fleet", f);
    out.fleet = f;
  }
  s.get("fit_budget", out.fit_budget);
  s.finish();
  sc.bus_capacity_scale = bus_pct / 100.0;
  sc.rail_capacity_scale = rail_pct / 100.0;
  sc.validate();
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  PipelineConfig c = default_config();
  c.base_dir = base_dir;
  Section top(root, "config");

  if (top.has("inputs")) {
    Section s(top.child("inputs"), "inputs");
    s.path("locations", c.locations);
    s.path("matrix", c.matrix);
    if (s.has("rail_matrix")) {
      std::filesystem::path p;
      s.path("rail_matrix", p);
      c.rail_matrix = p;
    }
    s.path("trips", c.trips);
    s.path("transactions", c.transactions);
    s.path("apc", c.apc);
    s.finish();
  }
  top.path("output_dir", c.output_dir);

  if (top.has("design")) {
    Section s(top.child("design"), "design");
    double horizon_h = hours(c.params.horizon_s), ext_h = hours(c.params.extended_horizon_s);
    s.get("alpha", c.params.alpha);
    s.get("horizon_h", horizon_h);
    s.get("extended_horizon_h", ext_h);
    s.get("transfer_limit", c.params.transfer_limit);
    s.get("bus_cost_per_hour", c.params.bus_cost_per_hour);
    s.get("shuttle_cost_per_hour", c.params.shuttle_cost_per_hour);
    s.get("shuttle_cost_per_mile", c.params.shuttle_cost_per_mile);
    s.get("bus_frequencies", c.network.bus_frequencies);
    s.get("rail_frequencies", c.network.rail_frequencies);
    s.get("nearest_rail_stations", c.network.nearest_rail_stations);
    s.finish();
    c.params.horizon_s = seconds_from_hours(horizon_h);
    c.params.extended_horizon_s = seconds_from_hours(ext_h);
  }
  c.params.validate();

  if (top.has("solver")) {
    Section s(top.child("solver"), "solver");
    s.get("max_iterations", c.benders.max_iterations);
    s.get("max_fractional_rounds", c.benders.max_fractional_rounds);
    s.get("cut_tolerance", c.benders.cut_tolerance);
    s.get("gap_tolerance", c.benders.gap_tolerance);
    s.finish();
  }
  if (top.has("rideshare")) {
    Section s(top.child("rideshare"), "rideshare");
    s.get("window_s", c.rideshare.window_s);
    s.get("detour_factor", c.rideshare.detour_factor);
    s.finish();
  }
  if (top.has("dispatch")) {
    Section s(top.child("dispatch"), "dispatch");
    auto& d = c.simulation.dispatch;
    s.get("epoch_s", c.simulation.epoch_s);
    s.get("detour_factor", d.detour_factor);
    s.get("base_penalty_s", d.base_penalty_s);
    s.get("improvement_iterations", d.improvement_iterations);
    s.get("shuttles_per_request", d.shuttles_per_request);
    s.finish();
  }
  if (top.has("simulation")) {
    Section s(top.child("simulation"), "simulation");
    auto& o = c.simulation;
    double window_min = o.overwhelm_window_s / 60, mean_min = o.overwhelm_mean_wait_s / 60,
           max_min = o.overwhelm_max_wait_s / 60;
    s.get("bus_capacity", o.bus_capacity);
    s.get("rail_capacity", o.rail_capacity);
    s.get("overwhelm_window_min", window_min);
    s.get("overwhelm_mean_wait_min", mean_min);
    s.get("overwhelm_max_wait_min", max_min);
    s.get("max_escalations", c.max_escalations);
    s.get("dispatch_log", o.record_dispatch_log);
    s.finish();
    o.overwhelm_window_s = window_min * 60;
    o.overwhelm_mean_wait_s = mean_min * 60;
    o.overwhelm_max_wait_s = max_min * 60;
  }
  if (top.has("cost")) {
    Section s(top.child("cost"), "cost");
    auto& m = c.cost;
    s.get("bus_wages", m.bus_wages);
    s.get("bus_fringe", m.bus_fringe);
    s.get("bus_maintenance_per_hour", m.bus_maintenance_per_hour);
    s.get("bus_price", m.bus_price);
    s.get("bus_life_years", m.bus_life_years);
    s.get("bus_revenue_hours_per_year", m.bus_revenue_hours_per_year);
    s.get("shuttle_wages", m.shuttle_wages);
    s.get("shuttle_fringe", m.shuttle_fringe);
    s.get("shuttle_maintenance_per_mile", m.shuttle_maintenance_per_mile);
    s.get("shuttle_miles_per_hour", m.shuttle_miles_per_hour);
    s.get("shuttle_price", m.shuttle_price);
    s.get("shuttle_life_years", m.shuttle_life_years);
    s.get("shuttle_revenue_hours_per_year", m.shuttle_revenue_hours_per_year);
    s.get("bus_cleaning_per_hour", m.bus_cleaning_per_hour);
    s.get("shuttle_cleaning_per_hour", m.shuttle_cleaning_per_hour);
    s.get("opex_share", m.opex_share);
    s.get("capex_share", m.capex_share);
    if (s.has("baseline_budget")) {
      double b = 0;
      s.get("baseline_budget", b);
      c.baseline_budget = b;
    }
    s.finish();
    m.validate();
  }
  if (top.has("od")) {
    Section s(top.child("od"), "od");
    double window_min = c.od.transfer_window_s / 60, bucket_min = c.od.bucket_s / 60;
    s.get("transfer_window_min", window_min);
    s.get("bucket_min", bucket_min);
    s.get("seed", c.od.seed);
    s.finish();
    c.od.transfer_window_s = window_min * 60;
    c.od.bucket_s = bucket_min * 60;
  }
  if (top.has("scenarios")) {
    const json& list = top.child("scenarios");
    if (!list.is_array() || list.empty()) throw InputError("config: 'scenarios' must be a nonempty array");
    c.scenarios.clear();
    std::set<std::string> names;
    for (const auto& j : list) {
      ScenarioConfig sc;
      read_scenario(j, sc);
      if (!names.insert(sc.scenario.name).second) {
        throw InputError("config: duplicate scenario name '" + sc.scenario.name + "'");
      }
      c.scenarios.push_back(std::move(sc));
    }
  }
  top.finish();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

}  // namespace odmts::cli
