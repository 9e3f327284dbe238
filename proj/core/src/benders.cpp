#include "odmts/benders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "odmts/costs.hpp"
#include "odmts/errors.hpp"
#include "odmts/subproblem.hpp"
#include "odmts/teg.hpp"
#include "parallel.hpp"

namespace odmts {

double BendersCut::evaluate(std::span<const double> z) const {
  double v = intercept;
  for (std::size_t a = 0; a < coefficients.size(); ++a) v += coefficients[a] * (z[a] - anchor[a]);
  return v;
}

namespace {

bool is_integral(std::span<const double> z) {
  return std::all_of(z.begin(), z.end(), [](double v) { return std::abs(v - std::round(v)) <= 1e-9; });
}

SubproblemBatch run_batch(std::span<const TransferExpandedGraph> tegs, std::span<const double> z, int threads) {
  std::vector<SubproblemResult> results(tegs.size());
  detail::parallel_for(tegs.size(), threads, [&](std::size_t i) { results[i] = solve_subproblem(tegs[i], z); });

  SubproblemBatch batch;
  batch.cut.coefficients.assign(z.size(), 0.0);
  batch.cut.anchor.assign(z.begin(), z.end());
  const bool integral = is_integral(z);
  // Reduction in trip order keeps the sums independent of scheduling.
  for (std::size_t i = 0; i < tegs.size(); ++i) {
    batch.value += results[i].cost;
    accumulate_cut_coefficients(tegs[i], results[i], batch.cut.coefficients);
    if (integral) batch.paths.push_back(TripPath{tegs[i].trip, std::move(results[i].path), results[i].cost});
  }
  batch.cut.intercept = batch.value;
  return batch;
}

std::vector<TransferExpandedGraph> build_tegs(const NetworkModel& network, std::span<const Trip> trips,
                                              const DesignParameters& params) {
  std::vector<TransferExpandedGraph> tegs;
  tegs.reserve(trips.size());
  for (const Trip& t : trips) tegs.push_back(build_teg(t, network, params));
  return tegs;
}

double fixed_cost(const NetworkModel& network, const DesignParameters& params, std::span<const double> z) {
  double total = 0.0;
  const auto bus = network.bus_arcs();
  for (std::size_t a = 0; a < bus.size(); ++a) total += arc_fixed_cost(network.arc(bus[a]), params) * z[a];
  return total;
}

DesignSolution make_solution(const NetworkModel& network, const DesignParameters& params, std::span<const double> z,
                             SubproblemBatch batch) {
  DesignSolution s;
  s.z.assign(z.begin(), z.end());
  for (double& v : s.z) v = std::round(v);
  const auto bus = network.bus_arcs();
  for (std::size_t a = 0; a < bus.size(); ++a) {
    if (s.z[a] > 0.5) s.open_bus_arcs.push_back(bus[a]);
  }
  s.fixed_cost_part = fixed_cost(network, params, s.z);
  s.passenger_part = batch.value;
  s.objective_total = s.fixed_cost_part + s.passenger_part;
  s.lower_bound = s.objective_total;
  s.paths = std::move(batch.paths);
  return s;
}

}  // namespace

bool design_is_feasible(const NetworkModel& network, std::span<const double> z) {
  const auto bus = network.bus_arcs();
  if (z.size() != bus.size()) return false;
  std::vector<double> balance(network.locations().size(), 0.0);
  std::map<std::pair<int, int>, double> per_pair;
  for (std::size_t a = 0; a < bus.size(); ++a) {
    const Arc& arc = network.arc(bus[a]);
    balance[arc.origin.index()] += arc.frequency * z[a];
    balance[arc.dest.index()] -= arc.frequency * z[a];
    per_pair[{arc.origin.value, arc.dest.value}] += z[a];
  }
  for (double b : balance) {
    if (std::abs(b) > 1e-9) return false;
  }
  for (const auto& [pair, count] : per_pair) {
    if (count > 1.0 + 1e-9) return false;
  }
  return true;
}

MasterSolution solve_master(const NetworkModel& network, const DesignParameters& params,
                            std::span<const BendersCut> cuts, bool relax, const lp::MipOptions& options) {
  const auto bus = network.bus_arcs();
  lp::Problem p;
  for (ArcId id : bus) p.add_variable(arc_fixed_cost(network.arc(id), params), 0.0, 1.0, !relax);
  const int theta = p.add_variable(1.0, 0.0, lp::kInfinity);

  std::map<int, std::vector<lp::Term>> balance;
  std::map<std::pair<int, int>, std::vector<lp::Term>> pairs;
  for (std::size_t a = 0; a < bus.size(); ++a) {
    const Arc& arc = network.arc(bus[a]);
    const int var = static_cast<int>(a);
    balance[arc.origin.value].push_back({var, static_cast<double>(arc.frequency)});
    balance[arc.dest.value].push_back({var, -static_cast<double>(arc.frequency)});
    pairs[{arc.origin.value, arc.dest.value}].push_back({var, 1.0});
  }
  for (auto& [hub, terms] : balance) p.add_row(std::move(terms), lp::Sense::Equal, 0.0);
  for (auto& [pair, terms] : pairs) {
    if (terms.size() > 1) p.add_row(std::move(terms), lp::Sense::LessEqual, 1.0);
  }
  for (const BendersCut& cut : cuts) {
    // theta - sum mu z >= intercept - sum mu anchor
    std::vector<lp::Term> terms{{theta, 1.0}};
    double rhs = cut.intercept;
    for (std::size_t a = 0; a < bus.size(); ++a) {
      if (cut.coefficients[a] == 0.0) continue;
      terms.push_back({static_cast<int>(a), -cut.coefficients[a]});
      rhs -= cut.coefficients[a] * cut.anchor[a];
    }
    p.add_row(std::move(terms), lp::Sense::GreaterEqual, rhs);
  }

  MasterSolution out;
  if (relax) {
    lp::Solution s = lp::solve_lp(p, options.simplex);
    out.status = s.status;
    if (s.status != lp::Status::Optimal) return out;
    out.objective = s.objective;
    out.z.assign(s.x.begin(), s.x.begin() + static_cast<long>(bus.size()));
    out.theta = s.x[theta];
    return out;
  }
  lp::MipSolution s = lp::solve_mip(p, options);
  out.status = s.status;
  if (s.x.empty()) return out;
  out.objective = s.objective;
  out.z.assign(s.x.begin(), s.x.begin() + static_cast<long>(bus.size()));
  out.theta = s.x[theta];
  return out;
}

SubproblemBatch solve_subproblems(const NetworkModel& network, std::span<const Trip> trips,
                                  const DesignParameters& params, std::span<const double> z, int threads) {
  if (z.size() != network.bus_arcs().size()) throw DomainError("design vector has the wrong length");
  const auto tegs = build_tegs(network, trips, params);
  return run_batch(tegs, z, threads);
}

DesignSolution evaluate_design(const NetworkModel& network, std::span<const Trip> trips,
                               const DesignParameters& params, std::span<const double> z, int threads) {
  if (!is_integral(z)) throw DomainError("evaluate_design needs an integral design");
  return make_solution(network, params, z, solve_subproblems(network, trips, params, z, threads));
}

DesignSolution benders_solve(const NetworkModel& network, std::span<const Trip> trips,
                             const DesignParameters& params, const BendersOptions& options) {
  params.validate();
  const auto tegs = build_tegs(network, trips, params);
  const std::size_t n = network.bus_arcs().size();

  std::vector<BendersCut> cuts;
  std::vector<BendersTraceRow> trace;
  int iteration = 0;

  std::vector<double> zero(n, 0.0);
  SubproblemBatch first = run_batch(tegs, zero, options.threads);
  cuts.push_back(first.cut);
  DesignSolution best = make_solution(network, params, zero, std::move(first));
  double upper = best.objective_total;
  double lower = 0.0;
  trace.push_back({iteration, "initial", lower, upper, 1});

  auto violated = [&](double value, double theta_hat) {
    return value > theta_hat + options.cut_tolerance * (1.0 + std::abs(theta_hat));
  };
  auto gap_closed = [&] { return upper - lower <= options.gap_tolerance * std::max(1.0, std::abs(upper)); };

  // Fractional rounds: cheap LP cuts that tighten the master before branching.
  for (int round = 0; round < options.max_fractional_rounds && iteration < options.max_iterations; ++round) {
    MasterSolution m = solve_master(network, params, cuts, true, options.mip);
    if (m.status != lp::Status::Optimal) throw SolverError("master LP relaxation failed: " + std::string(lp::to_string(m.status)));
    ++iteration;
    lower = std::max(lower, m.objective);
    SubproblemBatch batch = run_batch(tegs, m.z, options.threads);
    const bool add = violated(batch.value, m.theta);
    if (add) cuts.push_back(std::move(batch.cut));
    trace.push_back({iteration, "fractional", lower, upper, add ? 1 : 0});
    if (!add || gap_closed()) break;
  }

  bool converged = gap_closed();
  while (!converged && iteration < options.max_iterations) {
    MasterSolution m = solve_master(network, params, cuts, false, options.mip);
    if (m.status != lp::Status::Optimal) {
      if (m.z.empty()) throw SolverError("master problem failed: " + std::string(lp::to_string(m.status)));
      break;
    }
    ++iteration;
    lower = std::max(lower, m.objective);
    SubproblemBatch batch = run_batch(tegs, m.z, options.threads);
    const double value = batch.value;
    const bool add = violated(value, m.theta);
    const double total = fixed_cost(network, params, m.z) + value;
    if (add) cuts.push_back(batch.cut);
    if (total < upper) {
      upper = total;
      best = make_solution(network, params, m.z, std::move(batch));
    }
    trace.push_back({iteration, "integer", lower, upper, add ? 1 : 0});
    converged = !add || gap_closed();
  }

  best.lower_bound = std::min(lower, best.objective_total);
  best.optimal = converged;
  best.iterations = iteration;
  best.trace = std::move(trace);
  best.cuts = std::move(cuts);
  return best;
}

}  // namespace odmts
