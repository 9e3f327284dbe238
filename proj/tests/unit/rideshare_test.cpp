#include <gtest/gtest.h>

#include <random>

#include "../support/rideshare_oracle.hpp"
#include "fixtures.hpp"
#include "odmts/costs.hpp"
#include "odmts/rideshare.hpp"

namespace odmts {
namespace {

using testing::make_location;
using testing::make_trip;

// Hand-set matrix: entries in seconds and miles.
TravelMatrix square_matrix(int n, double seconds, double miles) {
  TravelMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) m.set(LocationId(i), LocationId(j), {seconds, miles});
    }
  }
  return m;
}

ShuttleRequest request(int id, int o, int d, double t, RequestClass kind, int hub) {
  ShuttleRequest r;
  r.id = id;
  r.origin = LocationId(o);
  r.dest = LocationId(d);
  r.request_time_s = t;
  r.kind = kind;
  r.hub = LocationId(hub);
  return r;
}

struct PathFixture {
  std::shared_ptr<NetworkModel> network;
  std::vector<Arc> arcs;
};

// o(0), d(1), h1(2), h2(3) rail with shuttle and rail arcs.
PathFixture path_fixture() {
  std::vector<Location> locs = testing::with_ids({make_location("o", 33.75, -84.40), make_location("d", 33.80, -84.35),
                                                  make_location("h1", 33.76, -84.39, true, true, {{"R", 1}}),
                                                  make_location("h2", 33.79, -84.36, true, true, {{"R", 2}})});
  auto road = testing::coordinate_matrix(locs);
  std::vector<Arc> arcs;
  auto add = [&](int o, int d, Mode m, int f, double secs) {
    Arc a;
    a.id = ArcId(arcs.size());
    a.origin = LocationId(o);
    a.dest = LocationId(d);
    a.mode = m;
    a.frequency = f;
    a.travel_time_s = secs;
    a.distance_mi = 1.0;
    arcs.push_back(a);
  };
  add(0, 2, Mode::Shuttle, 0, 600);   // 10 min
  add(2, 3, Mode::Rail, 24, 600);     // 10 min + 5 min expected wait
  add(3, 1, Mode::Shuttle, 0, 300);
  add(0, 1, Mode::Shuttle, 0, 900);
  PathFixture f;
  f.arcs = arcs;
  f.network = std::make_shared<NetworkModel>(locs, arcs, std::vector<int>{8}, std::vector<int>{24}, road);
  return f;
}

TEST(ExtractRequestsTest, FollowsPathTiming) {
  auto f = path_fixture();
  DesignParameters params;  // L = 4h, rail f = 24 -> 5 min expected wait
  Trip trip = make_trip(0, LocationId(0), LocationId(1), 2, 6 * 3600.0);
  std::vector<Trip> trips{trip};
  std::vector<TripPath> paths{{trip.id, {ArcId(0), ArcId(1), ArcId(2)}, 0.0}};
  auto reqs = extract_requests(*f.network, trips, paths, params);
  ASSERT_EQ(reqs.size(), 4u);  // two legs, two passengers
  EXPECT_EQ(reqs[0].kind, RequestClass::ToHub);
  EXPECT_EQ(reqs[0].hub, LocationId(2));
  EXPECT_DOUBLE_EQ(reqs[0].request_time_s, 6 * 3600.0);
  EXPECT_EQ(reqs[2].kind, RequestClass::FromHub);
  EXPECT_EQ(reqs[2].hub, LocationId(3));
  EXPECT_DOUBLE_EQ(reqs[2].request_time_s, 6 * 3600.0 + 25 * 60.0);  // 6:25
}

TEST(ExtractRequestsTest, SingleLegClasses) {
  auto f = path_fixture();
  DesignParameters params;
  Trip a = make_trip(0, LocationId(0), LocationId(1), 1, 100.0);
  std::vector<Trip> trips{a};
  std::vector<TripPath> direct{{a.id, {ArcId(3)}, 0.0}};
  auto r = extract_requests(*f.network, trips, direct, params);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].kind, RequestClass::Direct);
  EXPECT_DOUBLE_EQ(r[0].request_time_s, 100.0);
}

TEST(EnumerateRoutesTest, SingletonCostIsWeightedDirectLeg) {
  auto m = square_matrix(3, 600.0, 4.0);
  RideshareOptions opt;
  opt.alpha = 0.5;
  std::vector<ShuttleRequest> reqs{request(0, 0, 2, 0.0, RequestClass::ToHub, 2)};
  auto routes = enumerate_routes(reqs, m, opt);
  ASSERT_EQ(routes.size(), 1u);
  EXPECT_NEAR(routes[0].cost, 0.5 * 4.0 + 0.5 * (600.0 / 3600.0), 1e-12);
}

TEST(EnumerateRoutesTest, SharedRouteWithinDetourAndWindow) {
  // a(0) -> b(1) 120 s, a->h 500 s, b->h 480 s: via b the rider from a
  // takes 600 s = 1.2 x direct.
  TravelMatrix m(3);
  m.set(LocationId(0), LocationId(1), {120, 1});
  m.set(LocationId(1), LocationId(0), {120, 1});
  m.set(LocationId(0), LocationId(2), {500, 4});
  m.set(LocationId(2), LocationId(0), {500, 4});
  m.set(LocationId(1), LocationId(2), {480, 4});
  m.set(LocationId(2), LocationId(1), {480, 4});
  RideshareOptions opt;
  std::vector<ShuttleRequest> same_time{request(0, 0, 2, 100.0, RequestClass::ToHub, 2),
                                        request(1, 1, 2, 100.0, RequestClass::ToHub, 2)};
  auto routes = enumerate_routes(same_time, m, opt);
  ASSERT_EQ(routes.size(), 3u);
  const auto shared = std::find_if(routes.begin(), routes.end(), [](auto& r) { return r.requests.size() == 2; });
  ASSERT_NE(shared, routes.end());
  EXPECT_EQ(shared->stops.front().location, LocationId(0));
  EXPECT_DOUBLE_EQ(shared->end_time_s - shared->start_time_s, 600.0);

  std::vector<ShuttleRequest> apart{request(0, 0, 2, 100.0, RequestClass::ToHub, 2),
                                    request(1, 1, 2, 131.0, RequestClass::ToHub, 2)};
  EXPECT_EQ(enumerate_routes(apart, m, opt).size(), 2u);
  apart[1].request_time_s = 130.0;
  EXPECT_EQ(enumerate_routes(apart, m, opt).size(), 3u);
}

TEST(EnumerateRoutesTest, DetourLimitExcludesGroup) {
  TravelMatrix m(3);
  m.set(LocationId(0), LocationId(1), {400, 1});
  m.set(LocationId(1), LocationId(0), {400, 1});
  m.set(LocationId(0), LocationId(2), {500, 4});
  m.set(LocationId(2), LocationId(0), {500, 4});
  m.set(LocationId(1), LocationId(2), {500, 4});
  m.set(LocationId(2), LocationId(1), {500, 4});
  RideshareOptions opt;
  std::vector<ShuttleRequest> reqs{request(0, 0, 2, 0.0, RequestClass::ToHub, 2),
                                   request(1, 1, 2, 0.0, RequestClass::ToHub, 2)};
  EXPECT_EQ(enumerate_routes(reqs, m, opt).size(), 2u);  // 900 s > 1.5 x 500
  opt.detour_factor = 1.8;
  EXPECT_EQ(enumerate_routes(reqs, m, opt).size(), 3u);
}

TEST(SetPartitioningTest, PicksCheaperSharedPair) {
  auto m = square_matrix(4, 300.0, 1.0);
  std::vector<ShuttleRequest> reqs{request(0, 0, 3, 0.0, RequestClass::ToHub, 3),
                                   request(1, 1, 3, 0.0, RequestClass::ToHub, 3),
                                   request(2, 2, 3, 0.0, RequestClass::ToHub, 3)};
  std::vector<ShuttleRoute> routes;
  for (const auto& r : reqs) routes.push_back(singleton_route(r, m, {}));
  ShuttleRoute pair = routes[0];
  pair.requests = {0, 1};
  pair.cost = routes[0].cost + routes[1].cost - 0.1;
  routes.push_back(pair);
  auto sel = solve_set_partitioning(reqs, routes);
  EXPECT_EQ(sel, (std::vector<int>{2, 3}));
}

TEST(SetPartitioningTest, MatchesExhaustivePartitionsOnRandomInstances) {
  std::mt19937 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Location> locs;
    for (int i = 0; i < 7; ++i) {
      locs.push_back(make_location("p" + std::to_string(i), 33.75 + 0.02 * std::generate_canonical<double, 32>(rng),
                                   -84.40 + 0.02 * std::generate_canonical<double, 32>(rng), i == 6));
    }
    auto road = testing::coordinate_matrix(locs);
    std::vector<ShuttleRequest> reqs;
    const bool to_hub = rep % 2 == 0;
    for (int i = 0; i < 6; ++i) {
      const int stop = static_cast<int>(rng() % 6);
      const double t = static_cast<double>(rng() % 40);
      reqs.push_back(to_hub ? request(i, stop, 6, t, RequestClass::ToHub, 6)
                            : request(i, 6, stop, t, RequestClass::FromHub, 6));
    }
    RideshareOptions opt;
    opt.detour_factor = 2.0;
    auto routes = enumerate_routes(reqs, *road, opt);
    auto sel = solve_set_partitioning(reqs, routes);
    double cost = 0.0;
    std::vector<int> cover(reqs.size(), 0);
    for (int k : sel) {
      cost += routes[k].cost;
      for (int id : routes[k].requests) ++cover[id];
    }
    for (int c : cover) EXPECT_EQ(c, 1);
    EXPECT_NEAR(cost, oracle::best_partition_cost(reqs, routes), 1e-9) << "rep " << rep;
  }
}

ShuttleRoute timed_route(int loc_start, int loc_end, double start, double end) {
  ShuttleRoute r;
  r.stops.push_back(RouteStop{LocationId(loc_start), start, {}, {}});
  r.stops.push_back(RouteStop{LocationId(loc_end), end, {}, {}});
  r.start_time_s = start;
  r.end_time_s = end;
  return r;
}

TEST(FleetTest, RelocationTimeDecidesChaining) {
  TravelMatrix m(2);
  m.set(LocationId(0), LocationId(1), {20 * 60.0, 5});
  m.set(LocationId(1), LocationId(0), {20 * 60.0, 5});
  std::vector<ShuttleRoute> routes{timed_route(1, 0, 6 * 3600.0, 7 * 3600.0),
                                   timed_route(1, 0, 7.5 * 3600.0, 8 * 3600.0)};
  EXPECT_EQ(size_fleet(std::span<const ShuttleRoute>(routes.data(), 1), m).size, 1);
  auto plan = size_fleet(routes, m);
  EXPECT_EQ(plan.size, 1);
  EXPECT_EQ(plan.chains, (std::vector<std::vector<int>>{{0, 1}}));
  m.set(LocationId(0), LocationId(1), {40 * 60.0, 5});
  EXPECT_EQ(size_fleet(routes, m).size, 2);
}

TEST(FleetTest, MatchesBruteForceChainCover) {
  std::mt19937 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3;
    TravelMatrix m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) m.set(LocationId(i), LocationId(j), {static_cast<double>(rng() % 900), 1});
      }
    }
    std::vector<ShuttleRoute> routes;
    for (int k = 0; k < 8; ++k) {
      const double s = static_cast<double>(rng() % 7200);
      routes.push_back(timed_route(static_cast<int>(rng() % n), static_cast<int>(rng() % n), s,
                                   s + 300 + static_cast<double>(rng() % 1500)));
    }
    auto plan = size_fleet(routes, m);
    EXPECT_EQ(plan.size, oracle::min_chain_cover(routes, m)) << "rep " << rep;
    std::vector<int> seen(routes.size(), 0);
    for (const auto& chain : plan.chains) {
      for (std::size_t i = 0; i < chain.size(); ++i) {
        ++seen[chain[i]];
        if (i > 0) EXPECT_TRUE(routes_compatible(routes[chain[i - 1]], routes[chain[i]], m));
      }
    }
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}

}  // namespace
}  // namespace odmts
