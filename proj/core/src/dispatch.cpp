#include "odmts/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "odmts/errors.hpp"
#include "odmts/lp/mip.hpp"

namespace odmts {

double postponement_penalty(int epochs_waiting, double base_penalty_s) {
  return base_penalty_s * std::ldexp(1.0, std::max(0, epochs_waiting) / 10);
}

std::optional<double> plan_cost(const ShuttleState& shuttle, std::span<const Action> actions, double now,
                                std::span<const ShuttleRequest> requests, const TravelMatrix& road,
                                const DispatchOptions& options) {
  std::map<int, double> picked;
  for (const auto& r : shuttle.onboard) picked.emplace(r.request, r.pickup_time_s);
  std::set<int> riders;
  for (const auto& r : shuttle.onboard) riders.insert(r.request);
  for (const Action& a : actions) riders.insert(a.request);
  if (static_cast<int>(riders.size()) > options.capacity) return std::nullopt;

  int load = static_cast<int>(shuttle.onboard.size());
  double t = std::max(now, shuttle.ready_time_s);
  LocationId at = shuttle.location;
  double cost = 0.0;
  for (const Action& a : actions) {
    if (a.location != at) t += road.seconds(at, a.location);
    at = a.location;
    const ShuttleRequest& r = requests[a.request];
    if (a.kind == Action::Kind::Pickup) {
      t = std::max(t, r.request_time_s);
      cost += t - r.request_time_s;
      picked[a.request] = t;
      if (++load > options.capacity) return std::nullopt;
    } else {
      auto it = picked.find(a.request);
      if (it == picked.end()) return std::nullopt;  // drop-off before pickup
      const double ride = t - it->second;
      if (ride > options.detour_factor * road.seconds(r.origin, r.dest) + 1e-6) return std::nullopt;
      --load;
    }
  }
  return cost;
}

namespace {

struct Builder {
  double now;
  std::span<const ShuttleState> shuttles;
  std::span<const ShuttleRequest> requests;
  const TravelMatrix& road;
  const DispatchOptions& opt;

  std::vector<CandidateRoute> pool;
  std::set<std::pair<int, std::vector<int>>> seen;

  [[nodiscard]] std::size_t first_slot(const ShuttleState& s) const { return s.first_locked ? 1 : 0; }

  // Cheapest insertion of request p into route; pickup and drop-off slots
  // never precede a locked first action.
  std::optional<CandidateRoute> insert(const CandidateRoute& base, int p) const {
    const ShuttleState& s = shuttles[base.shuttle];
    const ShuttleRequest& r = requests[p];
    std::optional<CandidateRoute> best;
    const std::size_t n = base.actions.size();
    for (std::size_t i = std::min(first_slot(s), n); i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        std::vector<Action> actions = base.actions;
        actions.insert(actions.begin() + static_cast<long>(j), Action{Action::Kind::Dropoff, p, r.dest});
        actions.insert(actions.begin() + static_cast<long>(i), Action{Action::Kind::Pickup, p, r.origin});
        auto c = plan_cost(s, actions, now, requests, road, opt);
        if (c && (!best || *c < best->cost - 1e-9)) {
          best = CandidateRoute{base.shuttle, std::move(actions), base.served, *c};
        }
      }
    }
    if (best) {
      best->served.push_back(p);
      std::sort(best->served.begin(), best->served.end());
    }
    return best;
  }

  bool add(CandidateRoute route) {
    if (!seen.insert({route.shuttle, route.served}).second) return false;
    pool.push_back(std::move(route));
    return true;
  }

  // Every interleaving of `subset` into the committed actions; keeps the best.
  void exhaustive(const CandidateRoute& base, const std::vector<int>& subset) {
    const ShuttleState& s = shuttles[base.shuttle];
    std::optional<CandidateRoute> best;
    auto rec = [&](auto&& self, std::size_t k, std::vector<Action>& actions) -> void {
      if (k == subset.size()) {
        auto c = plan_cost(s, actions, now, requests, road, opt);
        if (c && (!best || *c < best->cost - 1e-9)) best = CandidateRoute{base.shuttle, actions, subset, *c};
        return;
      }
      const int p = subset[k];
      const std::size_t n = actions.size();
      for (std::size_t i = std::min(first_slot(s), n); i <= n; ++i) {
        for (std::size_t j = i; j <= n; ++j) {
          std::vector<Action> next = actions;
          next.insert(next.begin() + static_cast<long>(j), Action{Action::Kind::Dropoff, p, requests[p].dest});
          next.insert(next.begin() + static_cast<long>(i), Action{Action::Kind::Pickup, p, requests[p].origin});
          self(self, k + 1, next);
        }
      }
    };
    std::vector<Action> start = base.actions;
    rec(rec, 0, start);
    if (best) add(std::move(*best));
  }
};

}  // namespace

std::vector<CandidateRoute> generate_candidate_routes(double now, std::span<const ShuttleState> shuttles,
                                                      std::span<const PendingRequest> pending,
                                                      std::span<const ShuttleRequest> requests,
                                                      const TravelMatrix& road, const DispatchOptions& options) {
  Builder b{now, shuttles, requests, road, options, {}, {}};
  std::vector<CandidateRoute> bases;
  for (std::size_t s = 0; s < shuttles.size(); ++s) {
    CandidateRoute base{static_cast<int>(s), shuttles[s].committed, {}, 0.0};
    // Committed plans were feasible when made and stay so; only cost them.
    ShuttleState relaxed = shuttles[s];
    DispatchOptions loose = options;
    loose.capacity = 1 << 20;
    loose.detour_factor = 1e18;
    base.cost = plan_cost(relaxed, base.actions, now, requests, road, loose).value_or(0.0);
    bases.push_back(base);
    b.add(base);
  }
  if (pending.empty()) return std::move(b.pool);

  if (options.exhaustive) {
    const int n = static_cast<int>(pending.size());
    if (n > 16) throw DomainError("exhaustive dispatch pool limited to 16 pending requests");
    for (const auto& base : bases) {
      for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> subset;
        for (int k = 0; k < n; ++k) {
          if (mask >> k & 1) subset.push_back(pending[k].request);
        }
        std::sort(subset.begin(), subset.end());
        b.exhaustive(base, subset);
      }
    }
    return std::move(b.pool);
  }

  // Single insertions, keeping the cheapest few shuttles per request.
  for (const auto& p : pending) {
    std::vector<CandidateRoute> options_for_p;
    for (const auto& base : bases) {
      if (auto r = b.insert(base, p.request)) {
        r->cost -= base.cost;  // rank by marginal cost
        options_for_p.push_back(std::move(*r));
      }
    }
    std::stable_sort(options_for_p.begin(), options_for_p.end(),
                     [](const auto& x, const auto& y) { return x.cost < y.cost; });
    if (options.shuttles_per_request > 0 && static_cast<int>(options_for_p.size()) > options.shuttles_per_request) {
      options_for_p.resize(options.shuttles_per_request);
    }
    for (auto& r : options_for_p) {
      r.cost += bases[r.shuttle].cost;
      b.add(std::move(r));
    }
  }

  // Greedy extension of existing candidates by one more request at a time.
  std::size_t cursor = bases.size();
  for (int iter = 0; iter < options.improvement_iterations && cursor < b.pool.size(); ++cursor) {
    const CandidateRoute current = b.pool[cursor];
    std::optional<CandidateRoute> best;
    for (const auto& p : pending) {
      if (std::binary_search(current.served.begin(), current.served.end(), p.request)) continue;
      ++iter;
      auto r = b.insert(current, p.request);
      if (!r || b.seen.count({r->shuttle, r->served})) continue;
      if (!best || r->cost < best->cost - 1e-9) best = std::move(r);
    }
    if (best) b.add(std::move(*best));
  }
  return std::move(b.pool);
}

EpochDecision run_epoch(double now, std::span<const ShuttleState> shuttles, std::span<const PendingRequest> pending,
                        std::span<const ShuttleRequest> requests, const TravelMatrix& road,
                        const DispatchOptions& options) {
  auto pool = generate_candidate_routes(now, shuttles, pending, requests, road, options);
  EpochDecision decision;
  decision.pool_size = static_cast<int>(pool.size());

  lp::Problem p;
  for (const auto& r : pool) p.add_binary(r.cost);
  std::map<int, int> row_of;
  std::vector<int> w_var;
  for (const auto& q : pending) {
    row_of[q.request] = static_cast<int>(w_var.size());
    w_var.push_back(p.add_variable(postponement_penalty(q.epochs_waiting, options.base_penalty_s), 0.0, 1.0, true));
  }
  std::vector<std::vector<lp::Term>> cover(pending.size());
  std::vector<std::vector<lp::Term>> per_shuttle(shuttles.size());
  for (std::size_t k = 0; k < pool.size(); ++k) {
    for (int id : pool[k].served) cover[row_of.at(id)].push_back({static_cast<int>(k), 1.0});
    per_shuttle[pool[k].shuttle].push_back({static_cast<int>(k), 1.0});
  }
  for (std::size_t i = 0; i < pending.size(); ++i) {
    cover[i].push_back({w_var[i], 1.0});
    p.add_row(std::move(cover[i]), lp::Sense::Equal, 1.0);
  }
  for (auto& terms : per_shuttle) p.add_row(std::move(terms), lp::Sense::Equal, 1.0);

  auto s = lp::solve_mip(p);
  if (s.status != lp::Status::Optimal) throw SolverError("epoch selection failed: " + std::string(lp::to_string(s.status)));
  decision.objective = s.objective;
  decision.routes.resize(shuttles.size());
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (s.x[k] > 0.5) {
      decision.routes[pool[k].shuttle] = pool[k];
      for (int id : pool[k].served) decision.served.push_back(id);
    }
  }
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (s.x[w_var[i]] > 0.5) decision.postponed.push_back(pending[i].request);
  }
  std::sort(decision.served.begin(), decision.served.end());
  return decision;
}

}  // namespace odmts
