#include "odmts/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "odmts/errors.hpp"

namespace odmts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-12;

// Residual edge 2e is the forward copy of TEG arc e, 2e+1 its reverse.
struct Residual {
  explicit Residual(const TransferExpandedGraph& teg, std::span<const double> design)
      : n(teg.vertex_count), out(n), cap(2 * teg.arcs.size()), cost(2 * teg.arcs.size()),
        head(2 * teg.arcs.size()) {
    for (std::size_t e = 0; e < teg.arcs.size(); ++e) {
      const auto& a = teg.arcs[e];
      double u = kInf;
      if (a.bus_index >= 0) {
        if (static_cast<std::size_t>(a.bus_index) >= design.size()) throw DomainError("design vector too short");
        u = std::clamp(design[a.bus_index], 0.0, 1.0);
      }
      cap[2 * e] = u;
      cap[2 * e + 1] = 0.0;
      cost[2 * e] = a.cost;
      cost[2 * e + 1] = -a.cost;
      head[2 * e] = a.to;
      head[2 * e + 1] = a.from;
      out[a.from].push_back(static_cast<int>(2 * e));
      out[a.to].push_back(static_cast<int>(2 * e + 1));
    }
  }

  [[nodiscard]] int tail(int r) const { return head[r ^ 1]; }

  int n;
  std::vector<std::vector<int>> out;
  std::vector<double> cap;
  std::vector<double> cost;
  std::vector<int> head;
};

// Label-correcting shortest paths on the residual graph. Residual graphs
// here are tiny and may hold negative reverse arcs, so Bellman-Ford is
// simpler than maintaining Dijkstra potentials.
std::vector<double> shortest_paths(const Residual& g, int source, std::vector<int>& parent) {
  std::vector<double> dist(g.n, kInf);
  parent.assign(g.n, -1);
  dist[source] = 0.0;
  for (int pass = 0; pass < g.n; ++pass) {
    bool changed = false;
    for (int v = 0; v < g.n; ++v) {
      if (std::isinf(dist[v])) continue;
      for (int r : g.out[v]) {
        if (g.cap[r] <= kEps) continue;
        const int w = g.head[r];
        const double nd = dist[v] + g.cost[r];
        if (nd < dist[w] - 1e-12) {
          dist[w] = nd;
          parent[w] = r;
          changed = true;
        }
      }
    }
    if (!changed) return dist;
  }
  throw SolverError("negative cycle in residual graph");
}

}  // namespace

SubproblemResult solve_subproblem(const TransferExpandedGraph& teg, std::span<const double> design) {
  Residual g(teg, design);
  const int o = TransferExpandedGraph::kOrigin;
  const int d = TransferExpandedGraph::kDestination;

  std::vector<int> parent;
  double remaining = 1.0;
  while (remaining > kEps) {
    std::vector<double> dist = shortest_paths(g, o, parent);
    if (std::isinf(dist[d])) throw SolverError("subproblem infeasible: no origin-destination path");
    double push = remaining;
    for (int v = d; v != o; v = g.tail(parent[v])) push = std::min(push, g.cap[parent[v]]);
    for (int v = d; v != o; v = g.tail(parent[v])) {
      const int r = parent[v];
      g.cap[r] -= push;
      g.cap[r ^ 1] += push;
    }
    remaining -= push;
  }

  SubproblemResult result;
  result.flow.assign(teg.arcs.size(), 0.0);
  for (std::size_t e = 0; e < teg.arcs.size(); ++e) {
    result.flow[e] = g.cap[2 * e + 1];
    result.cost += result.flow[e] * teg.arcs[e].cost;
    if (result.flow[e] > kEps && result.flow[e] < 1.0 - 1e-9) result.integral = false;
  }

  // Residual shortest distances from the origin.
  std::vector<double> dist = shortest_paths(g, o, parent);
  std::vector<double> p(g.n, kInf);
  std::vector<bool> reached(g.n, false);
  for (int v = 0; v < g.n; ++v) {
    if (!std::isinf(dist[v])) {
      p[v] = dist[v];
      reached[v] = true;
    }
  }
  // Unreachable nodes: q(u) = min over residual arcs (u, x) of q(x) + c,
  // anchored at q = -p on reachable nodes; then p(u) = -q(u).
  std::vector<double> q(g.n, kInf);
  for (int v = 0; v < g.n; ++v) {
    if (reached[v]) q[v] = -p[v];
  }
  for (int iter = 0; iter < g.n; ++iter) {
    bool changed = false;
    for (int u = 0; u < g.n; ++u) {
      if (reached[u]) continue;
      for (int r : g.out[u]) {
        if (g.cap[r] <= kEps) continue;
        const int x = g.head[r];
        if (std::isinf(q[x])) continue;
        const double cand = q[x] + g.cost[r];
        if (cand < q[u] - 1e-15) {
          q[u] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  for (int v = 0; v < g.n; ++v) {
    if (!reached[v]) p[v] = std::isinf(q[v]) ? 0.0 : -q[v];
  }
  result.potentials = p;

  result.capacity_duals.assign(teg.arcs.size(), 0.0);
  for (std::size_t e = 0; e < teg.arcs.size(); ++e) {
    const auto& a = teg.arcs[e];
    if (a.bus_index < 0) continue;
    result.capacity_duals[e] = std::min(0.0, a.cost + p[a.from] - p[a.to]);
  }

  if (result.integral) {
    int v = o;
    while (v != d) {
      int next = -1;
      for (std::size_t e = 0; e < teg.arcs.size(); ++e) {
        if (teg.arcs[e].from == v && result.flow[e] > 0.5) {
          next = static_cast<int>(e);
          break;
        }
      }
      if (next < 0) break;
      result.path.push_back(teg.arcs[next].original);
      v = teg.arcs[next].to;
    }
  }
  return result;
}

void accumulate_cut_coefficients(const TransferExpandedGraph& teg, const SubproblemResult& result,
                                 std::span<double> coefficients) {
  for (std::size_t e = 0; e < teg.arcs.size(); ++e) {
    const int b = teg.arcs[e].bus_index;
    if (b >= 0) coefficients[b] += result.capacity_duals[e];
  }
}

}  // namespace odmts
