# Copyright 2026 The moparker Authors
# SPDX-License-Identifier: Apache-2.0

"""Writes the small synthetic Melbourne CBD dataset under data/sample."""

import argparse
import datetime as dt
import json
import math
import pathlib
import random

# (street, lat, lon, restriction, bays, bay bearing in degrees)
BLOCKS = [
    ("Swanston", -37.8103, 144.9644, "2P", 6, 0.0),
    ("Lonsdale", -37.8116, 144.9622, "1P", 5, 72.0),
    ("Russell", -37.8128, 144.9671, "2P", 4, 0.0),
    ("Collins", -37.8151, 144.9660, "1P", 5, 70.0),
    ("Exhibition", -37.8118, 144.9703, "4P", 6, 160.0),
    ("LaTrobe", -37.8092, 144.9601, "LZ", 3, 70.0),
    ("Queen", -37.8140, 144.9594, "2P", 4, 160.0),
    ("Flinders", -37.8178, 144.9660, "4P", 5, 70.0),
]

BAY_SPACING_M = 6.5


def offset(lat, lon, meters, bearing_deg):
    r = 6371000.0
    d = meters / r
    b = math.radians(bearing_deg)
    p1 = math.radians(lat)
    p2 = math.asin(math.sin(p1) * math.cos(d) + math.cos(p1) * math.sin(d) * math.cos(b))
    l2 = math.radians(lon) + math.atan2(math.sin(b) * math.sin(d) * math.cos(p1),
                                        math.cos(d) - math.sin(p1) * math.sin(p2))
    return round(math.degrees(p2), 7), round(math.degrees(l2), 7)


def busy_probability(hour, weekday, restriction):
    if restriction == "LZ":
        return 0.6 if 6 <= hour < 11 and weekday < 5 else 0.1
    day = 0.85 if weekday < 5 else 0.55
    if hour < 7 or hour >= 21:
        return 0.1
    if hour < 9:
        return 0.1 + (day - 0.1) * (hour - 7) / 2
    if hour < 18:
        return day
    return day - (day - 0.1) * (hour - 18) / 3


def stay_minutes(rng, restriction):
    limit = {"1P": 60, "2P": 120, "4P": 240, "LZ": 30}[restriction]
    return max(2, min(int(rng.expovariate(1.0 / (limit * 0.6))), limit + 30))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/sample")
    ap.add_argument("--days", type=int, default=7)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    bays = []
    marker = 1000
    for street, lat, lon, restriction, count, bearing in BLOCKS:
        for i in range(count):
            marker += 1
            blat, blon = offset(lat, lon, i * BAY_SPACING_M, bearing)
            bays.append((f"{marker}{street[0]}", blat, blon, restriction))

    start = dt.datetime(2026, 3, 2, 0, 0)  # Monday, local time
    rows = []
    for bay_id, lat, lon, restriction in bays:
        t = start
        end = start + dt.timedelta(days=args.days)
        while t < end:
            hour = t.hour + t.minute / 60
            if rng.random() < busy_probability(hour, t.weekday(), restriction):
                stay = stay_minutes(rng, restriction)
                dep = t + dt.timedelta(minutes=stay)
                rows.append((bay_id, lat, lon, t, dep, restriction))
                t = dep + dt.timedelta(minutes=rng.randint(1, 12))
            else:
                t += dt.timedelta(minutes=rng.choice([10, 15, 20, 30]))
    rows.sort(key=lambda r: (r[3], r[0]))

    fmt = "%Y-%m-%d %H:%M:%S"
    with open(out / "events.csv", "w", newline="") as f:
        f.write("bay_id,lat,lon,arrival,departure,restriction\n")
        for bay_id, lat, lon, a, d, restriction in rows:
            f.write(f"{bay_id},{lat},{lon},{a.strftime(fmt)},{d.strftime(fmt)},{restriction}\n")
        # Sensor faults the ingest step is expected to reject.
        f.write("1001S,-37.8103,144.9644,2026-03-03 10:00:00,2026-03-03 09:00:00,2P\n")
        f.write("1002S,-37.8103,144.9644,2026-03-03 25:00:00,2026-03-03 26:00:00,2P\n")
        f.write("1003S,-137.8,144.9644,2026-03-03 10:00:00,2026-03-03 11:00:00,2P\n")

    weekday_day = [{"days": "Mon-Fri", "start": "00:00", "end": "07:30", "rate_per_hour": 0},
                   {"days": "Mon-Fri", "start": "07:30", "end": "18:30", "rate_per_hour": None},
                   {"days": "Mon-Fri", "start": "18:30", "end": "24:00", "rate_per_hour": 0},
                   {"days": ["Sat", "Sun"], "start": "00:00", "end": "24:00", "rate_per_hour": 0}]

    def schedule(rate, cap):
        segs = [dict(s, rate_per_hour=rate if s["rate_per_hour"] is None else s["rate_per_hour"])
                for s in weekday_day]
        return {"timezone": "Australia/Melbourne", "cap": cap, "segments": segs}

    fares = {"1P": schedule(7.2, None), "2P": schedule(5.5, 22.0), "4P": schedule(3.0, 12.0),
             "LZ": {"timezone": "Australia/Melbourne", "cap": None, "segments": []}}
    (out / "fares.json").write_text(json.dumps(fares, indent=2) + "\n")

    queries = []
    origins = [(-37.7990, 144.9510), (-37.8230, 144.9480), (-37.8050, 144.9800)]
    dests = [(-37.8098, 144.9652), (-37.8136, 144.9631), (-37.8160, 144.9680)]
    for i, (o, d) in enumerate(zip(origins * 2, dests + dests[::-1])):
        queries.append({"from": {"lat": o[0], "lon": o[1]}, "to": {"lat": d[0], "lon": d[1]},
                        "arrive": f"2026-03-0{3 + i % 3}T{8 + i:02d}:30:00+11:00", "tau_minutes": 30,
                        "duration_minutes": 60 + 30 * (i % 3), "threshold_likelihood": 0.0})
    (out / "queries.json").write_text(json.dumps(queries, indent=2) + "\n")


if __name__ == "__main__":
    main()
