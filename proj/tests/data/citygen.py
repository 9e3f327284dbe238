"""Shared helpers for the committed test cities."""
import csv
import json
import math
import os

CIRCUITY = 1.3
ROAD_MPH = 20.0
RAIL_MPH = 35.0


def haversine_miles(a, b):
    r = 3958.7613
    la1, lo1, la2, lo2 = map(math.radians, (a[0], a[1], b[0], b[1]))
    h = math.sin((la2 - la1) / 2) ** 2 + math.cos(la1) * math.cos(la2) * math.sin((lo2 - lo1) / 2) ** 2
    return 2 * r * math.asin(math.sqrt(h))


def road_entry(a, b):
    miles = round(haversine_miles(a, b) * CIRCUITY, 3)
    seconds = round(miles / ROAD_MPH * 3600.0, 1)
    return seconds, miles


def rail_entry(a, b):
    miles = round(haversine_miles(a, b), 3)
    seconds = round(miles / RAIL_MPH * 3600.0, 1)
    return seconds, miles


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_json(path, obj):
    with open(path, "w") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def write_locations(path, locs):
    """locs: list of dicts name, lat, lon, hub, rail, line ('' or 'Red:1')."""
    write_csv(path, ["id", "lat", "lon", "is_hub", "is_rail_station", "rail_line"],
              [[l["name"], l["lat"], l["lon"], int(l["hub"]), int(l["rail"]), l.get("line", "")] for l in locs])


def write_matrices(folder, locs):
    road, rail = [], []
    for a in locs:
        for b in locs:
            if a is b:
                continue
            s, m = road_entry((a["lat"], a["lon"]), (b["lat"], b["lon"]))
            road.append([a["name"], b["name"], s, m])
            if a["rail"] and b["rail"]:
                s, m = rail_entry((a["lat"], a["lon"]), (b["lat"], b["lon"]))
                rail.append([a["name"], b["name"], s, m])
    write_csv(os.path.join(folder, "matrix.csv"), ["origin", "dest", "seconds", "miles"], road)
    write_csv(os.path.join(folder, "rail_matrix.csv"), ["origin", "dest", "seconds", "miles"], rail)
    return road, rail
