#include <gtest/gtest.h>

#include <random>

#include "../support/dispatch_oracle.hpp"
#include "fixtures.hpp"
#include "odmts/dispatch.hpp"

namespace odmts {
namespace {

TravelMatrix grid_matrix(int n, double step_s) {
  TravelMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) m.set(LocationId(i), LocationId(j), {step_s * std::abs(i - j), 0.2 * std::abs(i - j)});
    }
  }
  return m;
}

ShuttleRequest req(int id, int o, int d, double t) {
  ShuttleRequest r;
  r.id = id;
  r.origin = LocationId(o);
  r.dest = LocationId(d);
  r.request_time_s = t;
  return r;
}

ShuttleState idle_at(int id, int loc, double t = 0.0) {
  ShuttleState s;
  s.id = id;
  s.location = LocationId(loc);
  s.ready_time_s = t;
  return s;
}

TEST(PenaltyTest, DoublesEveryTenEpochs) {
  EXPECT_DOUBLE_EQ(postponement_penalty(0), 420.0);
  EXPECT_DOUBLE_EQ(postponement_penalty(9), 420.0);
  EXPECT_DOUBLE_EQ(postponement_penalty(10), 840.0);
  EXPECT_DOUBLE_EQ(postponement_penalty(25), 1680.0);
}

TEST(DispatchTest, IdleShuttleAtOriginPicksUpImmediately) {
  auto road = grid_matrix(3, 60);
  std::vector<ShuttleRequest> requests{req(0, 1, 2, 100.0)};
  std::vector<ShuttleState> shuttles{idle_at(0, 1)};
  std::vector<PendingRequest> pending{{0, 0}};
  auto d = run_epoch(100.0, shuttles, pending, requests, road, {});
  EXPECT_TRUE(d.postponed.empty());
  EXPECT_EQ(d.served, std::vector<int>{0});
  EXPECT_DOUBLE_EQ(d.objective, 0.0);
  ASSERT_EQ(d.routes[0].actions.size(), 2u);
  EXPECT_EQ(d.routes[0].actions[0].kind, Action::Kind::Pickup);
}

TEST(DispatchTest, SingleSeatShuttleServesOnePostponesOther) {
  auto road = grid_matrix(3, 60);
  std::vector<ShuttleRequest> requests{req(0, 0, 2, 0.0), req(1, 0, 1, 0.0)};
  std::vector<ShuttleState> shuttles{idle_at(0, 0)};
  std::vector<PendingRequest> pending{{0, 0}, {1, 0}};
  DispatchOptions opt;
  opt.capacity = 1;
  auto d = run_epoch(0.0, shuttles, pending, requests, road, opt);
  EXPECT_EQ(d.served.size(), 1u);
  ASSERT_EQ(d.postponed.size(), 1u);
  EXPECT_DOUBLE_EQ(d.objective, 420.0);
  EXPECT_DOUBLE_EQ(postponement_penalty(0 + 10), 840.0);
}

TEST(DispatchTest, NoPendingGivesOnlyIdleRoutes) {
  auto road = grid_matrix(3, 60);
  std::vector<ShuttleRequest> requests;
  std::vector<ShuttleState> shuttles{idle_at(0, 0), idle_at(1, 2)};
  auto pool = generate_candidate_routes(0.0, shuttles, {}, requests, road, {});
  ASSERT_EQ(pool.size(), 2u);
  for (const auto& r : pool) EXPECT_TRUE(r.actions.empty());
}

TEST(DispatchTest, OneRequestThreeShuttlesGivesThreeInsertions) {
  auto road = grid_matrix(4, 60);
  std::vector<ShuttleRequest> requests{req(0, 1, 3, 0.0)};
  std::vector<ShuttleState> shuttles{idle_at(0, 0), idle_at(1, 1), idle_at(2, 2)};
  std::vector<PendingRequest> pending{{0, 0}};
  auto pool = generate_candidate_routes(0.0, shuttles, pending, requests, road, {});
  int inserts = 0;
  for (const auto& r : pool) inserts += r.served.size() == 1 ? 1 : 0;
  EXPECT_GE(inserts, 3);
}

TEST(DispatchTest, InsertionBreakingOnboardDetourIsRejected) {
  // Rider 0 is onboard going 0 -> 1 (60 s direct, limit 90 s). Detouring to
  // location 3 for a pickup first would make the ride at least 300 s.
  auto road = grid_matrix(4, 60);
  std::vector<ShuttleRequest> requests{req(0, 0, 1, 0.0), req(1, 3, 2, 0.0)};
  ShuttleState s = idle_at(0, 0);
  s.onboard = {{0, 0.0}};
  s.committed = {{Action::Kind::Dropoff, 0, LocationId(1)}};
  std::vector<ShuttleState> shuttles{s};
  std::vector<PendingRequest> pending{{1, 0}};
  auto pool = generate_candidate_routes(0.0, shuttles, pending, requests, road, {});
  for (const auto& r : pool) {
    if (r.served.empty()) continue;
    EXPECT_EQ(r.actions.front().kind, Action::Kind::Dropoff) << "drop-off must come first";
  }
  std::vector<Action> violating{{Action::Kind::Pickup, 1, LocationId(3)},
                                {Action::Kind::Dropoff, 0, LocationId(1)},
                                {Action::Kind::Dropoff, 1, LocationId(2)}};
  EXPECT_FALSE(plan_cost(s, violating, 0.0, requests, road, {}).has_value());
}

TEST(DispatchTest, CommittedActionsArePreserved) {
  auto road = grid_matrix(5, 60);
  std::vector<ShuttleRequest> requests{req(0, 4, 0, 0.0), req(1, 2, 3, 0.0)};
  ShuttleState s = idle_at(0, 1);
  s.committed = {{Action::Kind::Pickup, 0, LocationId(4)}, {Action::Kind::Dropoff, 0, LocationId(0)}};
  s.first_locked = true;
  std::vector<ShuttleState> shuttles{s};
  std::vector<PendingRequest> pending{{1, 0}};
  DispatchOptions opt;
  opt.detour_factor = 10.0;
  auto pool = generate_candidate_routes(0.0, shuttles, pending, requests, road, opt);
  for (const auto& r : pool) {
    EXPECT_EQ(r.actions.front(), s.committed.front());
    std::vector<Action> kept;
    for (const auto& a : r.actions) {
      if (a.request == 0) kept.push_back(a);
    }
    EXPECT_EQ(kept, s.committed);
  }
}

TEST(DispatchTest, ExhaustivePoolMatchesAssignmentEnumeration) {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    const int locs = 6;
    auto road = grid_matrix(locs, 45 + static_cast<double>(rng() % 60));
    const int shuttle_count = 1 + static_cast<int>(rng() % 3);
    const int request_count = 1 + static_cast<int>(rng() % 4);
    std::vector<ShuttleRequest> requests;
    std::vector<PendingRequest> pending;
    for (int i = 0; i < request_count; ++i) {
      int o = static_cast<int>(rng() % locs);
      int d = static_cast<int>(rng() % locs);
      if (o == d) d = (d + 1) % locs;
      requests.push_back(req(i, o, d, static_cast<double>(rng() % 60)));
      pending.push_back({i, static_cast<int>(rng() % 25)});
    }
    std::vector<ShuttleState> shuttles;
    for (int k = 0; k < shuttle_count; ++k) shuttles.push_back(idle_at(k, static_cast<int>(rng() % locs), rng() % 90));
    DispatchOptions opt;
    opt.exhaustive = true;
    opt.capacity = 1 + static_cast<int>(rng() % 4);
    opt.detour_factor = 1.5 + (rng() % 3) * 0.5;
    auto d = run_epoch(60.0, shuttles, pending, requests, road, opt);
    const double expected = oracle::best_epoch_objective(60.0, shuttles, pending, requests, road, opt);
    EXPECT_NEAR(d.objective, expected, 1e-6) << "rep " << rep;
    std::vector<int> cover(request_count, 0);
    for (int p : d.served) ++cover[p];
    for (int p : d.postponed) ++cover[p];
    for (int c : cover) EXPECT_EQ(c, 1);
  }
}

}  // namespace
}  // namespace odmts
