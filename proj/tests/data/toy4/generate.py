"""4-hub design instance plus its optimum by exhaustive enumeration, written
independently of the C++ solver. Rerun: python3 generate.py"""
import itertools
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
import citygen  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
rng = random.Random(4)

ALPHA = 7.25 / 8.25
HORIZON_H = 2.0
K = 3
BUS_COST = 10.0
SHUTTLE_MI = 3.0
BUS_F = [4, 8]
RAIL_F = [12]

locs = [
    {"name": "R1", "lat": 33.78, "lon": -84.39, "hub": True, "rail": True, "line": "Blue:1"},
    {"name": "R2", "lat": 33.74, "lon": -84.39, "hub": True, "rail": True, "line": "Blue:2"},
    {"name": "H1", "lat": 33.76, "lon": -84.35, "hub": True, "rail": False},
    {"name": "H2", "lat": 33.76, "lon": -84.43, "hub": True, "rail": False},
]
for i in range(6):
    locs.append({"name": "P%d" % i, "lat": round(33.72 + rng.random() * 0.08, 5),
                 "lon": round(-84.45 + rng.random() * 0.12, 5), "hub": False, "rail": False})
citygen.write_locations(os.path.join(HERE, "locations.csv"), locs)
road, rail = citygen.write_matrices(HERE, locs)
road = {(a, b): (s, m) for a, b, s, m in road}
rail = {(a, b): (s, m) for a, b, s, m in rail}

stops = [l["name"] for l in locs if not l["hub"]]
trips = []
for k in range(8):
    o, d = rng.sample(stops, 2)
    trips.append(["q%d" % k, o, d, rng.choice([20, 40, 60]), rng.randrange(0, 3600)])
citygen.write_csv(os.path.join(HERE, "trips.csv"), ["id", "origin", "dest", "passengers", "request_time_s"], trips)

citygen.write_json(os.path.join(HERE, "config.json"), {
    "inputs": {"locations": "locations.csv", "matrix": "matrix.csv", "rail_matrix": "rail_matrix.csv",
               "trips": "trips.csv"},
    "output_dir": "out",
    "design": {"alpha": ALPHA, "horizon_h": HORIZON_H, "extended_horizon_h": 4.0, "transfer_limit": K,
               "bus_cost_per_hour": BUS_COST, "shuttle_cost_per_mile": SHUTTLE_MI,
               "bus_frequencies": BUS_F, "rail_frequencies": RAIL_F, "nearest_rail_stations": 2},
})

# ---- exhaustive oracle -------------------------------------------------
hubs = [l["name"] for l in locs if l["hub"]]
rail_st = [l["name"] for l in locs if l["rail"]]
bus_only = [h for h in hubs if h not in rail_st]


def nearest_rail(h, n):
    return sorted(rail_st, key=lambda r: (road[(h, r)][0], r))[:n]


bus_pairs = []
for a in bus_only:
    for b in bus_only:
        if a != b:
            bus_pairs.append((a, b))
for a in bus_only:
    for r in nearest_rail(a, 2):
        bus_pairs += [(a, r), (r, a)]
bus_pairs = sorted(set(bus_pairs))
rail_arcs = [("R1", "R2"), ("R2", "R1")]

H = HORIZON_H


def bus_beta(a, b, f):
    return (1 - ALPHA) * road[(a, b)][0] / 3600 * f * BUS_COST


def fixed_unit(secs, f):
    return ALPHA * (secs / 3600 + H / (2 * f))


def shuttle_unit(a, b):
    s, m = road[(a, b)]
    return (1 - ALPHA) * m * SHUTTLE_MI + ALPHA * s / 3600


def trip_cost(o, d, open_bus):
    arcs = [(a, b, fixed_unit(rail[(a, b)][0], RAIL_F[0])) for a, b in rail_arcs]
    arcs += [(a, b, fixed_unit(road[(a, b)][0], f)) for a, b, f in open_bus]
    arcs.append((o, d, shuttle_unit(o, d)))
    arcs += [(o, h, shuttle_unit(o, h)) for h in hubs if h != d]
    arcs += [(h, d, shuttle_unit(h, d)) for h in hubs if h != o]
    arcs = [x for x in arcs if x[1] != o and x[0] != d]
    inf = float("inf")
    cur = {o: 0.0}
    best = inf
    for _ in range(K):
        nxt = {}
        for a, b, c in arcs:
            if a in cur and cur[a] + c < nxt.get(b, inf):
                nxt[b] = cur[a] + c
        best = min(best, nxt.get(d, inf))
        cur = nxt
    return best


best = None
for choice in itertools.product(range(len(BUS_F) + 1), repeat=len(bus_pairs)):
    open_bus = [(a, b, BUS_F[c - 1]) for (a, b), c in zip(bus_pairs, choice) if c]
    bal = {}
    for a, b, f in open_bus:  # buses in = buses out at every hub
        bal[a] = bal.get(a, 0) + f
        bal[b] = bal.get(b, 0) - f
    if any(bal.values()):
        continue
    total = sum(bus_beta(a, b, f) for a, b, f in open_bus)
    total += sum(p * trip_cost(o, d, open_bus) for _, o, d, p, _ in trips)
    if best is None or total < best[0] - 1e-12:
        best = (total, open_bus)

citygen.write_json(os.path.join(HERE, "expected_design.json"), {
    "objective_total_usd": best[0],
    "open_bus_arcs": [{"from": a, "to": b, "frequency_per_horizon": f} for a, b, f in best[1]],
})
print(best)
