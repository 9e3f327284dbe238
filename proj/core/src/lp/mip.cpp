#include "odmts/lp/mip.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace odmts::lp {

namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  double bound = -kInfinity;
  int depth = 0;
  long serial = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.serial > b.serial;
  }
};

int most_fractional(const Problem& problem, const std::vector<double>& x, double tol) {
  int best = -1;
  double best_score = tol;
  for (int j = 0; j < problem.variable_count(); ++j) {
    if (!problem.integer[j]) continue;
    const double frac = x[j] - std::floor(x[j]);
    const double score = std::min(frac, 1.0 - frac);
    if (score > best_score + 1e-12) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

}  // namespace

MipSolution solve_mip(const Problem& problem, const MipOptions& options) {
  MipSolution result;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long serial = 0;

  auto prune_threshold = [&]() {
    if (std::isinf(result.objective)) return kInfinity;
    return result.objective - std::max(options.absolute_gap, options.relative_gap * std::abs(result.objective));
  };

  Node root{problem.lower, problem.upper, -kInfinity, 0, serial++};
  for (int j = 0; j < problem.variable_count(); ++j) {
    if (!problem.integer[j]) continue;
    root.lower[j] = std::ceil(root.lower[j] - options.integrality_tol);
    root.upper[j] = std::floor(root.upper[j] + options.integrality_tol);
  }
  open.push(std::move(root));
  bool hit_limit = false;
  bool unbounded = false;

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= prune_threshold()) continue;

    // Dive from this node until it is pruned or integral.
    while (true) {
      if (result.nodes >= options.max_nodes) {
        open.push(node);
        hit_limit = true;
        break;
      }
      ++result.nodes;
      Solution lp = solve_lp(problem, node.lower, node.upper, options.simplex);
      if (lp.status == Status::Unbounded) {
        unbounded = true;
        break;
      }
      if (lp.status != Status::Optimal) break;
      if (lp.objective >= prune_threshold()) break;

      const int j = most_fractional(problem, lp.x, options.integrality_tol);
      if (j < 0) {
        std::vector<double> x = lp.x;
        for (int k = 0; k < problem.variable_count(); ++k) {
          if (problem.integer[k]) x[k] = std::round(x[k]);
        }
        double obj = 0.0;
        for (int k = 0; k < problem.variable_count(); ++k) obj += problem.cost[k] * x[k];
        if (obj < result.objective) {
          result.objective = obj;
          result.x = std::move(x);
        }
        break;
      }

      const double v = lp.x[j];
      Node down{node.lower, node.upper, lp.objective, node.depth + 1, serial++};
      down.upper[j] = std::floor(v);
      Node up{node.lower, node.upper, lp.objective, node.depth + 1, serial++};
      up.lower[j] = std::ceil(v);
      const bool go_up = v - std::floor(v) >= 0.5;
      if (go_up) {
        open.push(std::move(down));
        node = std::move(up);
      } else {
        open.push(std::move(up));
        node = std::move(down);
      }
    }
    if (hit_limit || unbounded) break;
  }

  if (unbounded) {
    result.status = Status::Unbounded;
    return result;
  }
  double best_open = kInfinity;
  if (hit_limit) {
    while (!open.empty()) {
      best_open = std::min(best_open, open.top().bound);
      open.pop();
    }
  }
  if (std::isinf(result.objective)) {
    result.status = hit_limit ? Status::NodeLimit : Status::Infeasible;
    return result;
  }
  result.status = hit_limit ? Status::NodeLimit : Status::Optimal;
  result.bound = hit_limit ? std::min(best_open, result.objective) : result.objective;
  return result;
}

}  // namespace odmts::lp
