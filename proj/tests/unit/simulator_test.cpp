#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "odmts/benders.hpp"
#include "odmts/errors.hpp"
#include "odmts/network.hpp"
#include "odmts/simulator.hpp"

namespace odmts {
namespace {

using testing::make_location;
using testing::make_trip;

// o(0) d(1) rail r1(2) r2(3) bus hubs b1(4) b2(5). Every road pair is 300 s / 1 mi.
struct Corridor {
  std::shared_ptr<NetworkModel> network;
  DesignParameters params;
};

Corridor corridor() {
  auto locs = testing::with_ids({make_location("o", 0, 0), make_location("d", 0, 0.1),
                                 make_location("r1", 0.01, 0, true, true, {{"R", 1}}),
                                 make_location("r2", 0.01, 0.1, true, true, {{"R", 2}}),
                                 make_location("b1", 0.02, 0, true), make_location("b2", 0.02, 0.1, true)});
  auto road = std::make_shared<TravelMatrix>(locs.size());
  for (std::size_t i = 0; i < locs.size(); ++i) {
    for (std::size_t j = 0; j < locs.size(); ++j) {
      if (i != j) road->set(LocationId(i), LocationId(j), {300.0, 1.0});
    }
  }
  std::vector<Arc> arcs;
  auto add = [&](int o, int d, Mode m, int f, double secs) {
    Arc a;
    a.id = ArcId(arcs.size());
    a.origin = LocationId(o);
    a.dest = LocationId(d);
    a.mode = m;
    a.frequency = f;
    a.travel_time_s = secs;
    a.distance_mi = 2.0;
    arcs.push_back(a);
  };
  add(2, 3, Mode::Rail, 24, 420);    // 0
  add(3, 2, Mode::Rail, 24, 420);    // 1
  add(4, 5, Mode::Bus, 8, 500);      // 2, bus index 0
  add(5, 4, Mode::Bus, 8, 700);      // 3, bus index 1
  add(0, 1, Mode::Shuttle, 0, 300);  // 4
  add(0, 4, Mode::Shuttle, 0, 300);  // 5
  add(5, 1, Mode::Shuttle, 0, 300);  // 6
  Corridor c;
  c.network = std::make_shared<NetworkModel>(locs, arcs, std::vector<int>{8}, std::vector<int>{24}, road);
  return c;
}

DesignSolution design_with(std::vector<double> z, const NetworkModel& net, std::vector<TripPath> paths) {
  DesignSolution d;
  d.z = std::move(z);
  for (std::size_t a = 0; a < d.z.size(); ++a) {
    if (d.z[a] > 0.5) d.open_bus_arcs.push_back(net.bus_arcs()[a]);
  }
  d.paths = std::move(paths);
  return d;
}

Scenario base_scenario() {
  Scenario s;
  s.name = "test";
  s.seed = 7;
  return s;
}

double rail_phase(const Corridor& c, std::uint64_t seed) {
  for (const auto& line : build_rail_lines(*c.network, c.params, seed)) {
    if (line.name == "R+") return line.phase_s;
  }
  ADD_FAILURE() << "rail line missing";
  return 0.0;
}

TEST(TransitLinesTest, RailBothDirectionsWithHeadway) {
  auto c = corridor();
  auto lines = build_rail_lines(*c.network, c.params, 1);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].arcs, std::vector<ArcId>{ArcId(0)});
  EXPECT_EQ(lines[1].arcs, std::vector<ArcId>{ArcId(1)});
  EXPECT_DOUBLE_EQ(lines[0].headway_s, 600.0);
  EXPECT_GE(lines[0].phase_s, 0.0);
  EXPECT_LT(lines[0].phase_s, 600.0);
}

TEST(TransitLinesTest, BusCycleFormsOneLine) {
  auto c = corridor();
  auto lines = build_bus_lines(*c.network, std::vector<double>{1, 1}, c.params, 1);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].frequency, 8);
  EXPECT_DOUBLE_EQ(lines[0].headway_s, 1800.0);
  EXPECT_DOUBLE_EQ(lines[0].cycle_s, 1200.0);
  EXPECT_EQ(lines[0].vehicles, 1);
  EXPECT_THROW((void)build_bus_lines(*c.network, std::vector<double>{1, 0}, c.params, 1), DomainError);
  EXPECT_TRUE(build_bus_lines(*c.network, std::vector<double>{0, 0}, c.params, 1).empty());
}

TEST(SimulatorTest, RailWaitIsZeroAtDepartureAndHalfHeadwayOnAverage) {
  auto c = corridor();
  const Scenario sc = base_scenario();
  const double phase = rail_phase(c, sc.seed);
  const double dep = phase + 5 * 600.0;
  std::vector<Trip> trips;
  std::vector<TripPath> paths;
  // One passenger per second over a full headway starting at a departure.
  for (int k = 0; k < 600; ++k) {
    trips.push_back(make_trip(k, LocationId(2), LocationId(3), 1, dep + k));
    paths.push_back({TripId(k), {ArcId(0)}, 0.0});
  }
  auto design = design_with({0, 0}, *c.network, paths);
  SimulationOptions opt;
  opt.rail_capacity = 1000;  // 599 riders share one run
  auto rep = simulate(*c.network, design, trips, c.params, sc, 0, opt);
  ASSERT_EQ(rep.passengers_completed, 600);
  EXPECT_DOUBLE_EQ(rep.passengers[0].wait_s(), 0.0);
  EXPECT_DOUBLE_EQ(rep.passengers[1].wait_s(), 599.0);
  EXPECT_DOUBLE_EQ(rep.passengers[0].legs[0].alight_s, dep + 420.0);
  // Mean over a uniform grid of arrivals: (0 + 599 + 598 + ... + 1) / 600.
  EXPECT_NEAR(rep.mean_wait_s, 299.5, 1e-9);
  EXPECT_NEAR(rep.mean_wait_s, 300.0, 1.0);
}

TEST(SimulatorTest, FullBusDelaysSecondPassengerOneHeadway) {
  auto c = corridor();
  Scenario sc = base_scenario();
  SimulationOptions opt;
  opt.bus_capacity = 1;
  std::vector<Trip> trips{make_trip(0, LocationId(4), LocationId(5), 2, 1000.0)};
  auto design = design_with({1, 1}, *c.network, {{TripId(0), {ArcId(2)}, 0.0}});
  auto rep = simulate(*c.network, design, trips, c.params, sc, 0, opt);
  ASSERT_EQ(rep.passengers.size(), 2u);
  const auto& a = rep.passengers[0].legs[0];
  const auto& b = rep.passengers[1].legs[0];
  EXPECT_GE(a.board_s, 1000.0);
  EXPECT_LT(a.board_s, 1000.0 + 1800.0);
  EXPECT_DOUBLE_EQ(b.board_s - a.board_s, 1800.0);
  EXPECT_DOUBLE_EQ(b.alight_s, b.board_s + 500.0);
  EXPECT_EQ(rep.capacity_violations, 0);
  for (const auto& leg : rep.vehicle_legs) EXPECT_LE(leg.occupancy, leg.capacity);
}

TEST(SimulatorTest, ZeroBusCapacityStrandsRiders) {
  auto c = corridor();
  Scenario sc = base_scenario();
  sc.bus_capacity_scale = 0.0;
  std::vector<Trip> trips{make_trip(0, LocationId(4), LocationId(5), 1, 100.0)};
  auto design = design_with({1, 1}, *c.network, {{TripId(0), {ArcId(2)}, 0.0}});
  auto rep = simulate(*c.network, design, trips, c.params, sc, 0, {});
  EXPECT_EQ(rep.stranded, 1);
  EXPECT_EQ(rep.passengers_started, rep.passengers_completed + rep.passengers_in_flight);
}

TEST(SimulatorTest, DirectShuttleTimingFollowsEpochs) {
  auto c = corridor();
  std::vector<Trip> trips{make_trip(0, LocationId(0), LocationId(1), 1, 100.0)};
  auto design = design_with({0, 0}, *c.network, {{TripId(0), {ArcId(4)}, 0.0}});
  auto rep = simulate(*c.network, design, trips, c.params, base_scenario(), 1, {});
  ASSERT_EQ(rep.passengers_completed, 1);
  const auto& leg = rep.passengers[0].legs[0];
  // Dispatched at the 120 s epoch, then 300 s from the seed hub.
  EXPECT_DOUBLE_EQ(leg.board_s, 420.0);
  EXPECT_DOUBLE_EQ(leg.alight_s, 720.0);
  EXPECT_DOUBLE_EQ(rep.shuttle_miles, 2.0);
  EXPECT_DOUBLE_EQ(rep.shuttle_miles_by_occupancy[0], 1.0);
  EXPECT_DOUBLE_EQ(rep.shuttle_miles_by_occupancy[1], 1.0);
}

TEST(SimulatorTest, BusDisabledScenarioRejectsBusDesign) {
  auto c = corridor();
  Scenario sc = base_scenario();
  sc.bus_enabled = false;
  std::vector<Trip> trips{make_trip(0, LocationId(4), LocationId(5), 1, 100.0)};
  auto design = design_with({1, 1}, *c.network, {{TripId(0), {ArcId(2)}, 0.0}});
  EXPECT_THROW((void)simulate(*c.network, design, trips, c.params, sc, 0, {}), DomainError);
}

TEST(SimulatorTest, ShuttleSeedingIsLargestRemainder) {
  auto c = corridor();
  std::vector<ShuttleRequest> reqs(4);
  for (int i = 0; i < 3; ++i) {
    reqs[i].kind = RequestClass::ToHub;
    reqs[i].hub = LocationId(2);
  }
  reqs[3].kind = RequestClass::FromHub;
  reqs[3].hub = LocationId(5);
  auto pos = seed_shuttles(*c.network, reqs, 5);
  std::vector<LocationId> expected{LocationId(2), LocationId(2), LocationId(2), LocationId(2), LocationId(5)};
  EXPECT_EQ(pos, expected);
  // No hub demand: spread evenly over the four hubs.
  auto even = seed_shuttles(*c.network, {}, 4);
  EXPECT_EQ(even.size(), 4u);
  EXPECT_EQ(even[0], LocationId(2));
  EXPECT_EQ(even[3], LocationId(5));
}

// Small city: network built from a random trip set, design from Benders.
struct City {
  std::shared_ptr<NetworkModel> network;
  std::vector<Trip> trips;
  DesignParameters params;
  DesignSolution design;
};

City small_city(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  std::vector<Location> locs{make_location("h1", 33.75, -84.40, true, true, {{"R", 1}}),
                             make_location("h2", 33.80, -84.40, true, true, {{"R", 2}}),
                             make_location("h3", 33.78, -84.35, true)};
  for (int i = 0; i < 8; ++i) locs.push_back(make_location("s" + std::to_string(i), 33.74 + u(rng), -84.42 + u(rng)));
  locs = testing::with_ids(locs);
  auto road = testing::coordinate_matrix(locs);
  City c;
  c.params.horizon_s = 3600.0;
  c.params.extended_horizon_s = 3 * 3600.0;
  std::uniform_int_distribution<int> stop(3, 10), pax(1, 3);
  std::uniform_real_distribution<double> when(0.0, 3600.0);
  for (int t = 0; t < 20; ++t) {
    int o = stop(rng), d = stop(rng);
    if (o == d) d = o == 10 ? 3 : o + 1;
    c.trips.push_back(make_trip(t, LocationId(o), LocationId(d), pax(rng), std::floor(when(rng))));
  }
  NetworkOptions opt;
  opt.bus_frequencies = {4};
  opt.rail_frequencies = {6};
  c.network = std::make_shared<NetworkModel>(build_network(locs, c.trips, road, opt));
  c.design = benders_solve(*c.network, c.trips, c.params);
  return c;
}

void expect_same(const SimulationReport& a, const SimulationReport& b) {
  ASSERT_EQ(a.passengers.size(), b.passengers.size());
  for (std::size_t p = 0; p < a.passengers.size(); ++p) {
    for (std::size_t l = 0; l < a.passengers[p].legs.size(); ++l) {
      EXPECT_EQ(a.passengers[p].legs[l].board_s, b.passengers[p].legs[l].board_s);
      EXPECT_EQ(a.passengers[p].legs[l].alight_s, b.passengers[p].legs[l].alight_s);
      EXPECT_EQ(a.passengers[p].legs[l].vehicle, b.passengers[p].legs[l].vehicle);
    }
  }
  ASSERT_EQ(a.vehicle_legs.size(), b.vehicle_legs.size());
  for (std::size_t v = 0; v < a.vehicle_legs.size(); ++v) {
    EXPECT_EQ(a.vehicle_legs[v].vehicle, b.vehicle_legs[v].vehicle);
    EXPECT_EQ(a.vehicle_legs[v].depart_s, b.vehicle_legs[v].depart_s);
    EXPECT_EQ(a.vehicle_legs[v].occupancy, b.vehicle_legs[v].occupancy);
  }
  EXPECT_EQ(a.shuttle_miles, b.shuttle_miles);
  EXPECT_EQ(a.peak_rolling_shuttle_wait_s, b.peak_rolling_shuttle_wait_s);
}

TEST(SimulatorTest, SmallCityInvariants) {
  for (unsigned seed : {1u, 2u, 3u}) {
    auto c = small_city(seed);
    Scenario sc = base_scenario();
    sc.shuttle_capacity = 2;
    auto rep = simulate(*c.network, c.design, c.trips, c.params, sc, 6, {});
    int started = 0;
    for (const auto& t : c.trips) started += t.passengers;
    EXPECT_EQ(rep.passengers_started, started);
    EXPECT_EQ(rep.passengers_started, rep.passengers_completed + rep.passengers_in_flight);
    EXPECT_EQ(rep.stranded, 0);
    EXPECT_EQ(rep.capacity_violations, 0);
    for (const auto& p : rep.passengers) {
      const auto* path = &c.design.paths[p.trip.index()];
      ASSERT_EQ(p.legs.size(), path->arcs.size());
      double prev = p.start_s;
      for (std::size_t l = 0; l < p.legs.size(); ++l) {
        EXPECT_EQ(p.legs[l].arc, path->arcs[l]);
        EXPECT_DOUBLE_EQ(p.legs[l].arrive_s, prev);
        EXPECT_GE(p.legs[l].board_s, p.legs[l].arrive_s);
        if (p.legs[l].mode != Mode::Shuttle) {
          EXPECT_DOUBLE_EQ(p.legs[l].alight_s, p.legs[l].board_s + c.network->arc(p.legs[l].arc).travel_time_s);
        }
        prev = p.legs[l].alight_s;
      }
    }
    for (const auto& [mode, bins] : rep.wait_bins) {
      auto pct = bins.percentages();
      EXPECT_NEAR(pct[0] + pct[1] + pct[2], 100.0, 1e-9);
      EXPECT_EQ(bins.counts[0] + bins.counts[1] + bins.counts[2], bins.trips);
    }
    // Determinism and truncation: a longer L+ leaves [0, L] unchanged.
    expect_same(rep, simulate(*c.network, c.design, c.trips, c.params, sc, 6, {}));
    auto longer = c.params;
    longer.extended_horizon_s *= 2;
    expect_same(rep, simulate(*c.network, c.design, c.trips, longer, sc, 6, {}));
  }
}

TEST(AutoscaleTest, GrowsByTenPercentUntilHealthy) {
  auto run = [](int n) {
    SimulationReport r;
    r.fleet_size = n;
    r.overwhelmed = n < 11;
    return r;
  };
  auto res = autoscale_fleet(10, run);
  EXPECT_EQ(res.fleet_size, 11);
  EXPECT_EQ(res.escalations, 1);
  EXPECT_FALSE(res.failed);
  EXPECT_EQ(autoscale_fleet(11, run).fleet_size, 11);
}

TEST(AutoscaleTest, FailsAfterTenEscalations) {
  auto res = autoscale_fleet(3, [](int n) {
    SimulationReport r;
    r.fleet_size = n;
    r.overwhelmed = true;
    return r;
  });
  EXPECT_TRUE(res.failed);
  EXPECT_EQ(res.escalations, 10);
}

TEST(AutoscaleTest, OverloadedCityNeedsMoreShuttles) {
  // All demand in one burst at a single stop: one shuttle cannot keep up.
  auto c = corridor();
  std::vector<Trip> trips;
  std::vector<TripPath> paths;
  for (int k = 0; k < 30; ++k) {
    trips.push_back(make_trip(k, LocationId(0), LocationId(1), 1, 60.0 * k));
    paths.push_back({TripId(k), {ArcId(4)}, 0.0});
  }
  auto design = design_with({0, 0}, *c.network, paths);
  Scenario sc = base_scenario();
  sc.shuttle_capacity = 1;
  auto run = [&](int n) { return simulate(*c.network, design, trips, c.params, sc, n, {}); };
  EXPECT_TRUE(run(1).overwhelmed);
  auto res = autoscale_fleet(1, run);
  EXPECT_FALSE(res.failed);
  EXPECT_GT(res.fleet_size, 1);
  EXPECT_FALSE(res.report.overwhelmed);
  EXPECT_TRUE(run(res.fleet_size - 1).overwhelmed || res.escalations == 0);
}

}  // namespace
}  // namespace odmts
