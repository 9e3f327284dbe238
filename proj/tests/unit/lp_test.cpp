#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "odmts/lp/mip.hpp"
#include "odmts/lp/simplex.hpp"

namespace odmts::lp {
namespace {

TEST(SimplexTest, TextbookMaximization) {
  // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  Problem p;
  int x = p.add_variable(-3, 0, kInfinity);
  int y = p.add_variable(-5, 0, kInfinity);
  p.add_row({{x, 1}}, Sense::LessEqual, 4);
  p.add_row({{y, 2}}, Sense::LessEqual, 12);
  p.add_row({{x, 3}, {y, 2}}, Sense::LessEqual, 18);
  Solution s = solve_lp(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.objective, -36.0, 1e-9);
  EXPECT_NEAR(s.x[x], 2.0, 1e-9);
  EXPECT_NEAR(s.x[y], 6.0, 1e-9);
}

TEST(SimplexTest, EqualityAndGreaterEqualRowsNeedPhaseOne) {
  // min x + 2y st x + y = 3, x - y >= -1, x <= 1.5 (upper bound) -> x=1.5, y=1.5
  Problem p;
  int x = p.add_variable(1, 0, 1.5);
  int y = p.add_variable(2, 0, kInfinity);
  p.add_row({{x, 1}, {y, 1}}, Sense::Equal, 3);
  p.add_row({{x, 1}, {y, -1}}, Sense::GreaterEqual, -1);
  Solution s = solve_lp(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.x[x], 1.5, 1e-9);
  EXPECT_NEAR(s.x[y], 1.5, 1e-9);
  EXPECT_NEAR(s.objective, 4.5, 1e-9);
}

TEST(SimplexTest, DetectsInfeasibility) {
  Problem p;
  int x = p.add_variable(1, 0, 1);
  p.add_row({{x, 1}}, Sense::GreaterEqual, 2);
  EXPECT_EQ(solve_lp(p).status, Status::Infeasible);
}

TEST(SimplexTest, DetectsUnboundedness) {
  Problem p;
  int x = p.add_variable(-1, 0, kInfinity);
  int y = p.add_variable(0, 0, kInfinity);
  p.add_row({{x, 1}, {y, -1}}, Sense::LessEqual, 1);
  EXPECT_EQ(solve_lp(p).status, Status::Unbounded);
}

TEST(SimplexTest, NegativeLowerBoundsAndBoundFlips) {
  // min -x - y with x in [-2, 3], y in [1, 2], x + y <= 4 -> 4
  Problem p;
  int x = p.add_variable(-1, -2, 3);
  int y = p.add_variable(-1, 1, 2);
  p.add_row({{x, 1}, {y, 1}}, Sense::LessEqual, 4);
  Solution s = solve_lp(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.objective, -4.0, 1e-9);
}

// Random binary programs checked against full enumeration.
TEST(MipTest, MatchesEnumerationOnRandomBinaryPrograms) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 9);
  std::uniform_int_distribution<int> nvars(2, 9);
  std::uniform_int_distribution<int> nrows(1, 5);
  for (int instance = 0; instance < 150; ++instance) {
    Problem p;
    const int n = nvars(rng);
    for (int j = 0; j < n; ++j) p.add_binary(coef(rng));
    const int m = nrows(rng);
    for (int i = 0; i < m; ++i) {
      std::vector<Term> terms;
      for (int j = 0; j < n; ++j) terms.push_back({j, static_cast<double>(coef(rng))});
      const int kind = static_cast<int>(rng() % 3);
      const Sense sense = kind == 0 ? Sense::LessEqual : kind == 1 ? Sense::GreaterEqual : Sense::Equal;
      double rhs = coef(rng);
      if (sense == Sense::Equal) {
        // Make equality rows satisfiable by a random point.
        rhs = 0;
        for (const Term& t : terms) rhs += t.coef * static_cast<double>(rng() % 2);
      }
      p.add_row(std::move(terms), sense, rhs);
    }

    double best = kInfinity;
    for (int mask = 0; mask < (1 << n); ++mask) {
      bool ok = true;
      for (const Row& row : p.rows) {
        double act = 0;
        for (const Term& t : row.terms) act += t.coef * ((mask >> t.var) & 1);
        if (row.sense == Sense::LessEqual && act > row.rhs + 1e-9) ok = false;
        if (row.sense == Sense::GreaterEqual && act < row.rhs - 1e-9) ok = false;
        if (row.sense == Sense::Equal && std::abs(act - row.rhs) > 1e-9) ok = false;
      }
      if (!ok) continue;
      double obj = 0;
      for (int j = 0; j < n; ++j) obj += p.cost[j] * ((mask >> j) & 1);
      best = std::min(best, obj);
    }

    MipSolution s = solve_mip(p);
    if (std::isinf(best)) {
      EXPECT_EQ(s.status, Status::Infeasible) << "instance " << instance;
    } else {
      ASSERT_EQ(s.status, Status::Optimal) << "instance " << instance;
      EXPECT_NEAR(s.objective, best, 1e-7) << "instance " << instance;
    }
  }
}

TEST(MipTest, MixedIntegerWithContinuousEpigraph) {
  // min 3z + t st t >= 10 - 4z, t >= 0, z binary -> z=1, 3 + 6 = 9
  Problem p;
  int z = p.add_binary(3);
  int t = p.add_variable(1, 0, kInfinity);
  p.add_row({{t, 1}, {z, 4}}, Sense::GreaterEqual, 10);
  MipSolution s = solve_mip(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.objective, 9.0, 1e-9);
  EXPECT_NEAR(s.x[z], 1.0, 1e-9);
}

}  // namespace
}  // namespace odmts::lp
