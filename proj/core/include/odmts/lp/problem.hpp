#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace odmts::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// min c'x subject to rows and l <= x <= u. Every variable needs at least
/// one finite bound.
struct Problem {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer;
  std::vector<Row> rows;

  int add_variable(double c, double lo, double up, bool is_integer = false) {
    cost.push_back(c);
    lower.push_back(lo);
    upper.push_back(up);
    integer.push_back(is_integer);
    return static_cast<int>(cost.size()) - 1;
  }
  int add_binary(double c) { return add_variable(c, 0.0, 1.0, true); }
  void add_row(std::vector<Term> terms, Sense sense, double rhs) {
    rows.push_back(Row{std::move(terms), sense, rhs});
  }
  [[nodiscard]] int variable_count() const { return static_cast<int>(cost.size()); }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit, NodeLimit };

const char* to_string(Status status);

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

}  // namespace odmts::lp
