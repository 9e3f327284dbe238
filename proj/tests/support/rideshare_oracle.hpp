#pragma once

// Exhaustive references for set partitioning and fleet sizing.

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "odmts/rideshare.hpp"

namespace odmts::oracle {

/// Cheapest exact cover, by branching on the lowest uncovered request.
inline double best_partition_cost(std::span<const ShuttleRequest> requests, std::span<const ShuttleRoute> routes) {
  std::set<int> uncovered;
  for (const auto& r : requests) uncovered.insert(r.id);
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, double cost) -> void {
    if (cost >= best) return;
    if (uncovered.empty()) {
      best = cost;
      return;
    }
    const int first = *uncovered.begin();
    for (const auto& route : routes) {
      if (std::find(route.requests.begin(), route.requests.end(), first) == route.requests.end()) continue;
      const bool fits = std::all_of(route.requests.begin(), route.requests.end(),
                                    [&](int id) { return uncovered.count(id) > 0; });
      if (!fits) continue;
      for (int id : route.requests) uncovered.erase(id);
      self(self, cost + route.cost);
      for (int id : route.requests) uncovered.insert(id);
    }
  };
  rec(rec, 0.0);
  return best;
}

/// Minimum chain cover: every permutation splits into chains at each
/// incompatible neighbour pair; the best permutation is optimal.
inline int min_chain_cover(std::span<const ShuttleRoute> routes, const TravelMatrix& road) {
  if (routes.empty()) return 0;
  std::vector<int> perm(routes.size());
  std::iota(perm.begin(), perm.end(), 0);
  int best = static_cast<int>(routes.size());
  do {
    int chains = 1;
    for (std::size_t i = 1; i < perm.size() && chains < best; ++i) {
      if (!routes_compatible(routes[perm[i - 1]], routes[perm[i]], road)) ++chains;
    }
    best = std::min(best, chains);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace odmts::oracle
