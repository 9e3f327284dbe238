#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "odmts/errors.hpp"
#include "pipeline/commands.hpp"

namespace {

void configure_logging() {
  // Log level is the only setting read from the environment.
  spdlog::set_default_logger(spdlog::stderr_color_mt("odmts"));
  spdlog::set_pattern("[%l] %v");
  if (const char* level = std::getenv("ODMTS_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace odmts::cli;
  configure_logging();

  CLI::App app{"On-demand multimodal transit pipeline: estimate, design, evaluate, cost, budget"};
  app.require_subcommand(1);
  std::string config_path;
  int threads = 0;
  app.add_option("--config", config_path, "JSON pipeline config");
  app.add_option("--threads", threads, "Worker cap (0 = all cores); results do not depend on it")->check(CLI::NonNegativeNumber);

  auto* estimate = app.add_subcommand("estimate", "Chain fare transactions into trips.csv");
  std::string tx_path, apc_path, locations_path, out_dir;
  estimate->add_option("--transactions", tx_path, "transactions.csv");
  estimate->add_option("--apc", apc_path, "apc.csv");
  estimate->add_option("--locations", locations_path, "locations.csv");
  estimate->add_option("--out", out_dir, "output directory");

  auto* design = app.add_subcommand("design", "Solve the network design; writes design.json and benders_trace.csv");
  design->add_option("--out", out_dir, "output directory");

  auto* evaluate = app.add_subcommand("evaluate", "Size fleets, simulate and price every scenario");
  std::string design_path;
  int fleet = -1;
  bool fixed = false, redesign = false;
  evaluate->add_option("--design", design_path, "design.json from the design command (default: solve)");
  evaluate->add_option("--fleet", fleet, "initial shuttle fleet for every scenario")->check(CLI::PositiveNumber);
  auto* fixed_flag = evaluate->add_flag("--fixed-design", fixed, "keep the baseline design (default)");
  evaluate->add_flag("--redesign", redesign, "redesign per scenario with measured costs")->excludes(fixed_flag);
  evaluate->add_option("--out", out_dir, "output directory");

  auto* cost = app.add_subcommand("cost", "Hourly vehicle costs and system cost");
  int buses = 0, shuttles = 0;
  double horizon_h = 4.0;
  bool cleaning = false;
  cost->add_option("--buses", buses)->check(CLI::NonNegativeNumber);
  cost->add_option("--shuttles", shuttles)->check(CLI::NonNegativeNumber);
  cost->add_option("--hours", horizon_h)->check(CLI::NonNegativeNumber);
  cost->add_flag("--cleaning", cleaning);

  auto* budget = app.add_subcommand("budget", "Scenario budget and largest affordable shuttle fleet");
  double baseline = 0.0, fraction = 1.0, fare = 0.33, bus_cost = -1.0;
  budget->add_option("--baseline", baseline, "baseline budget, dollars")->required();
  budget->add_option("--fraction", fraction, "ridership fraction")->check(CLI::Range(0.0, 1.0));
  budget->add_option("--fare-share", fare, "fare share of operating expenses")->check(CLI::Range(0.0, 1.0));
  budget->add_option("--bus-cost", bus_cost, "bus subsystem cost, dollars");
  budget->add_option("--hours", horizon_h);
  budget->add_flag("--cleaning", cleaning);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    PipelineConfig config = config_path.empty() ? default_config() : load_config(config_path);
    config.benders.threads = threads;
    config.rideshare.threads = threads;
    config.od.threads = threads;
    if (!out_dir.empty()) config.output_dir = std::filesystem::absolute(out_dir);
    if (!tx_path.empty()) config.transactions = std::filesystem::absolute(tx_path);
    if (!apc_path.empty()) config.apc = std::filesystem::absolute(apc_path);
    if (!locations_path.empty()) config.locations = std::filesystem::absolute(locations_path);

    if (*estimate) return run_estimate(config);
    if (*design) return run_design(config);
    if (*evaluate) {
      std::optional<std::filesystem::path> file;
      if (!design_path.empty()) file = std::filesystem::absolute(design_path);
      std::optional<int> f;
      if (fleet > 0) f = fleet;
      return run_evaluate(config, redesign, file, f);
    }
    if (*cost) return run_cost(config.cost, buses, shuttles, horizon_h, cleaning);
    if (*budget) {
      std::optional<double> bc;
      if (bus_cost >= 0.0) bc = bus_cost;
      return run_budget(config.cost, baseline, fraction, fare, bc, horizon_h, cleaning);
    }
  } catch (const odmts::InputError& e) {
    spdlog::error("input error: {}", e.what());
    return kInputError;
  } catch (const odmts::DomainError& e) {
    spdlog::error("invalid value: {}", e.what());
    return kInputError;
  } catch (const odmts::SolverError& e) {
    spdlog::error("solver failure: {}", e.what());
    return kSolverFailure;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return kInternal;
  }
  return kOk;
}
