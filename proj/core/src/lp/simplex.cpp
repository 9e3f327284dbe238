#include "odmts/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace odmts::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "optimal";
    case Status::Infeasible:
      return "infeasible";
    case Status::Unbounded:
      return "unbounded";
    case Status::IterationLimit:
      return "iteration_limit";
    case Status::NodeLimit:
      return "node_limit";
  }
  return "unknown";
}

namespace {

// Columns: structural [0, n), slacks [n, n + m), artificials after.
class Tableau {
 public:
  Tableau(const Problem& problem, const std::vector<double>& lower, const std::vector<double>& upper,
          const SimplexOptions& options)
      : opt_(options), n_(problem.variable_count()), m_(static_cast<int>(problem.rows.size())) {
    lo_ = lower;
    up_ = upper;
    for (int j = 0; j < n_; ++j) {
      if (std::isinf(lo_[j]) && std::isinf(up_[j])) throw std::invalid_argument("free variables are not supported");
    }
    for (const Row& row : problem.rows) {
      switch (row.sense) {
        case Sense::LessEqual:
          lo_.push_back(0.0);
          up_.push_back(kInfinity);
          break;
        case Sense::GreaterEqual:
          lo_.push_back(-kInfinity);
          up_.push_back(0.0);
          break;
        case Sense::Equal:
          lo_.push_back(0.0);
          up_.push_back(0.0);
          break;
      }
    }

    // Nonbasic structurals start at a finite bound; residual decides the basis.
    value_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) value_[j] = std::isinf(lo_[j]) ? up_[j] : lo_[j];

    std::vector<std::vector<double>> dense(m_, std::vector<double>(n_, 0.0));
    std::vector<double> residual(m_);
    for (int i = 0; i < m_; ++i) {
      double activity = 0.0;
      for (const Term& t : problem.rows[i].terms) {
        dense[i][t.var] += t.coef;
        activity += t.coef * value_[t.var];
      }
      residual[i] = problem.rows[i].rhs - activity;
    }

    std::vector<int> art_row;
    std::vector<double> art_sign;
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const double r = residual[i];
      if (r >= lo_[s] - opt_.feasibility_tol && r <= up_[s] + opt_.feasibility_tol) {
        basis_[i] = s;
        value_[s] = r;
      } else {
        value_[s] = 0.0;
        art_row.push_back(i);
        art_sign.push_back(r >= 0.0 ? 1.0 : -1.0);
      }
    }
    art_begin_ = n_ + m_;
    cols_ = art_begin_ + static_cast<int>(art_row.size());
    lo_.resize(cols_, 0.0);
    up_.resize(cols_, kInfinity);
    value_.resize(cols_, 0.0);
    at_upper_.assign(cols_, false);
    for (int j = 0; j < n_ + m_; ++j) at_upper_[j] = std::isinf(lo_[j]) || (value_[j] == up_[j] && value_[j] != lo_[j]);

    t_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
    for (std::size_t k = 0; k < art_row.size(); ++k) {
      const int i = art_row[k];
      const int a = art_begin_ + static_cast<int>(k);
      basis_[i] = a;
      value_[a] = std::abs(residual[i]);
      // Row i is scaled by 1 / sign so the artificial column is +1.
      const double scale = 1.0 / art_sign[k];
      for (int j = 0; j < n_; ++j) at(i, j) = dense[i][j] * scale;
      at(i, n_ + i) = scale;
      at(i, a) = 1.0;
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] != n_ + i) continue;
      for (int j = 0; j < n_; ++j) at(i, j) = dense[i][j];
      at(i, n_ + i) = 1.0;
    }
    is_basic_.assign(cols_, -1);
    for (int i = 0; i < m_; ++i) is_basic_[basis_[i]] = i;
  }

  Solution run(const Problem& problem) {
    Solution sol;
    // Phase 1: minimize the sum of artificials.
    if (cols_ > art_begin_) {
      std::vector<double> c1(cols_, 0.0);
      for (int a = art_begin_; a < cols_; ++a) c1[a] = 1.0;
      Status st = optimize(c1, sol.iterations);
      if (st == Status::IterationLimit) {
        sol.status = st;
        return sol;
      }
      double infeas = 0.0;
      for (int a = art_begin_; a < cols_; ++a) infeas += value_[a];
      if (infeas > 1e-7 * (1.0 + rhs_scale(problem))) {
        sol.status = Status::Infeasible;
        return sol;
      }
      for (int a = art_begin_; a < cols_; ++a) {
        up_[a] = 0.0;
        if (is_basic_[a] < 0) value_[a] = 0.0;
      }
    }
    std::vector<double> c2(cols_, 0.0);
    for (int j = 0; j < n_; ++j) c2[j] = problem.cost[j];
    Status st = optimize(c2, sol.iterations);
    sol.status = st;
    if (st != Status::Optimal) return sol;
    sol.x.assign(value_.begin(), value_.begin() + n_);
    for (int j = 0; j < n_; ++j) sol.x[j] = std::clamp(sol.x[j], lo_[j], up_[j]);
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective += problem.cost[j] * sol.x[j];
    return sol;
  }

 private:
  double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * cols_ + j]; }
  [[nodiscard]] double at(int i, int j) const { return t_[static_cast<std::size_t>(i) * cols_ + j]; }

  static double rhs_scale(const Problem& problem) {
    double s = 0.0;
    for (const Row& r : problem.rows) s = std::max(s, std::abs(r.rhs));
    return s;
  }

  Status optimize(const std::vector<double>& cost, int& iterations) {
    // Reduced costs d_j = c_j - c_B' T_j.
    std::vector<double> d(cost);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols_; ++j) d[j] -= cb * at(i, j);
    }
    int degenerate_run = 0;
    while (true) {
      if (iterations >= opt_.max_iterations) return Status::IterationLimit;
      const bool bland = degenerate_run >= opt_.degenerate_switch;

      int enter = -1;
      double best = 0.0;
      double dir = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (is_basic_[j] >= 0 || lo_[j] == up_[j]) continue;
        double score = 0.0;
        double this_dir = 0.0;
        if (!at_upper_[j] && d[j] < -opt_.optimality_tol && up_[j] > value_[j]) {
          score = -d[j];
          this_dir = 1.0;
        } else if (at_upper_[j] && d[j] > opt_.optimality_tol && value_[j] > lo_[j]) {
          score = d[j];
          this_dir = -1.0;
        } else {
          continue;
        }
        if (bland) {
          enter = j;
          dir = this_dir;
          break;
        }
        if (score > best) {
          best = score;
          enter = j;
          dir = this_dir;
        }
      }
      if (enter < 0) return Status::Optimal;

      // Ratio test. Basic var in row i moves by rate_i * step.
      double step = up_[enter] - lo_[enter];
      int leave_row = -1;
      bool leave_to_upper = false;
      double leave_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (std::abs(a) <= opt_.pivot_tol) continue;
        const double rate = -dir * a;
        const int b = basis_[i];
        double limit = kInfinity;
        bool to_upper = false;
        if (rate < 0.0) {
          if (std::isinf(lo_[b])) continue;
          limit = std::max(0.0, value_[b] - lo_[b]) / -rate;
        } else {
          if (std::isinf(up_[b])) continue;
          limit = std::max(0.0, up_[b] - value_[b]) / rate;
          to_upper = true;
        }
        const bool tie_better = leave_row >= 0 && limit <= step + 1e-12 &&
                                (bland ? b < basis_[leave_row] : std::abs(a) > std::abs(leave_pivot));
        if (limit < step - 1e-12 || tie_better) {
          step = limit;
          leave_row = i;
          leave_to_upper = to_upper;
          leave_pivot = a;
        }
      }
      if (std::isinf(step)) return Status::Unbounded;
      ++iterations;
      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;

      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a != 0.0) value_[basis_[i]] += -dir * a * step;
      }
      value_[enter] += dir * step;

      if (leave_row < 0) {
        // Bound flip, basis unchanged.
        at_upper_[enter] = dir > 0.0;
        value_[enter] = at_upper_[enter] ? up_[enter] : lo_[enter];
        continue;
      }

      const int leave = basis_[leave_row];
      value_[leave] = leave_to_upper ? up_[leave] : lo_[leave];
      at_upper_[leave] = leave_to_upper;
      pivot(leave_row, enter, d);
      is_basic_[leave] = -1;
      basis_[leave_row] = enter;
      is_basic_[enter] = leave_row;
    }
  }

  void pivot(int r, int e, std::vector<double>& d) {
    const double p = at(r, e);
    double* row_r = &t_[static_cast<std::size_t>(r) * cols_];
    for (int j = 0; j < cols_; ++j) row_r[j] /= p;
    row_r[e] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row_i = &t_[static_cast<std::size_t>(i) * cols_];
      const double f = row_i[e];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) {
        if (row_r[j] != 0.0) row_i[j] -= f * row_r[j];
      }
      row_i[e] = 0.0;
    }
    const double f = d[e];
    if (f != 0.0) {
      for (int j = 0; j < cols_; ++j) {
        if (row_r[j] != 0.0) d[j] -= f * row_r[j];
      }
      d[e] = 0.0;
    }
  }

  SimplexOptions opt_;
  int n_;
  int m_;
  int art_begin_ = 0;
  int cols_ = 0;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> value_;
  std::vector<bool> at_upper_;
  std::vector<int> basis_;
  std::vector<int> is_basic_;
  std::vector<double> t_;
};

}  // namespace

Solution solve_lp(const Problem& problem, const std::vector<double>& lower, const std::vector<double>& upper,
                  const SimplexOptions& options) {
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (lower[j] > upper[j] + options.feasibility_tol) return Solution{Status::Infeasible, 0.0, {}, 0};
  }
  Tableau tableau(problem, lower, upper, options);
  return tableau.run(problem);
}

Solution solve_lp(const Problem& problem, const SimplexOptions& options) {
  return solve_lp(problem, problem.lower, problem.upper, options);
}

}  // namespace odmts::lp
