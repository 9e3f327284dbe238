"""Regenerates the 200-passenger toy city. Output is committed; rerun only
when the fixture should change: python3 generate.py"""
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
import citygen  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
rng = random.Random(20200801)

locs = [
    {"name": "RN", "lat": 33.800, "lon": -84.390, "hub": True, "rail": True, "line": "Red:1"},
    {"name": "RC", "lat": 33.760, "lon": -84.390, "hub": True, "rail": True, "line": "Red:2"},
    {"name": "RS", "lat": 33.720, "lon": -84.390, "hub": True, "rail": True, "line": "Red:3"},
    {"name": "HE", "lat": 33.765, "lon": -84.340, "hub": True, "rail": False},
    {"name": "HW", "lat": 33.755, "lon": -84.440, "hub": True, "rail": False},
    {"name": "HX", "lat": 33.790, "lon": -84.350, "hub": True, "rail": False},
]
for i in range(24):
    locs.append({"name": "S%02d" % i, "lat": round(33.70 + rng.random() * 0.12, 5),
                 "lon": round(-84.46 + rng.random() * 0.14, 5), "hub": False, "rail": False})
citygen.write_locations(os.path.join(HERE, "locations.csv"), locs)
citygen.write_matrices(HERE, locs)

stops = [l["name"] for l in locs if not l["hub"]]
trips, total, k = [], 0, 0
while total < 200:
    o, d = rng.sample(stops, 2)
    p = min(rng.choice([1, 1, 1, 2, 3]), 200 - total)
    t = rng.randrange(0, 2 * 3600)
    trips.append(["t%03d" % k, o, d, p, t])
    total += p
    k += 1
trips.sort(key=lambda r: (r[4], r[0]))
citygen.write_csv(os.path.join(HERE, "trips.csv"), ["id", "origin", "dest", "passengers", "request_time_s"], trips)

# 100 fare cards over two bus routes and the rail line.
routes = {"B1": ["S00", "S03", "S07", "HE", "S11"], "B2": ["S15", "HW", "S18", "S21", "S02"]}
tx, boards = [], {}
for c in range(100):
    card = "card%03d" % c
    kind = rng.random()
    t0 = 6 * 3600 + rng.randrange(0, 3 * 3600)
    if kind < 0.4:
        st = rng.sample(["RN", "RC", "RS"], 2)
        tx.append([card, t0, st[0], "rail_entry", ""])
        tx.append([card, t0 + 900, st[1], "rail_exit", ""])
    else:
        r1 = rng.choice(sorted(routes))
        s1 = rng.choice(routes[r1][:-1])
        tx.append([card, t0, s1, "bus_board", r1])
        boards[(r1, s1)] = boards.get((r1, s1), 0) + 1
        if kind < 0.8:
            r2 = rng.choice(sorted(routes))
            s2 = rng.choice(routes[r2][:-1])
            tx.append([card, t0 + 9 * 3600, s2, "bus_board", r2])
            boards[(r2, s2)] = boards.get((r2, s2), 0) + 1
tx.sort(key=lambda r: (r[1], r[0]))
citygen.write_csv(os.path.join(HERE, "transactions.csv"), ["card_id", "time_s", "terminal", "kind", "route"], tx)

apc = []
for r in sorted(routes):
    for seq, s in enumerate(routes[r], start=1):
        on = boards.get((r, s), 0) + (rng.randrange(0, 3) if seq < len(routes[r]) else 0)
        off = rng.randrange(0, 6) if seq > 1 else 0
        apc.append([s, r, seq, 8 * 3600 + 120 * seq, on, off])
citygen.write_csv(os.path.join(HERE, "apc.csv"), ["stop", "route", "sequence", "time_s", "boardings", "alightings"], apc)

citygen.write_json(os.path.join(HERE, "config.json"), {
    "inputs": {"locations": "locations.csv", "matrix": "matrix.csv", "rail_matrix": "rail_matrix.csv",
               "trips": "trips.csv", "transactions": "transactions.csv", "apc": "apc.csv"},
    "output_dir": "out",
    "design": {"alpha": 7.25 / 8.25, "horizon_h": 2.0, "extended_horizon_h": 4.0, "transfer_limit": 4,
               "bus_cost_per_hour": 72.15, "shuttle_cost_per_mile": 3.0,
               "bus_frequencies": [4, 6, 8], "rail_frequencies": [12], "nearest_rail_stations": 2},
    "simulation": {"dispatch_log": True},
    "scenarios": [
        {"name": "baseline", "ridership_fraction": 1.0, "shuttle_capacity": 4, "seed": 11},
        {"name": "pandemic", "ridership_fraction": 0.45, "shuttle_capacity": 1, "bus_capacity_pct": 50,
         "rail_capacity_pct": 50, "cleaning": True, "seed": 11},
        {"name": "strict", "ridership_fraction": 0.45, "shuttle_capacity": 1, "bus_capacity_pct": 0,
         "rail_capacity_pct": 25, "bus_enabled": False, "cleaning": True, "seed": 11},
    ],
})
