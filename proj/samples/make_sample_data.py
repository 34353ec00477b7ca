#!/usr/bin/env python3
"""Generate a small synthetic two-year dataset for trying out the CLI.

Writes samples/availability.csv (two regions, two technologies, 17520 hourly
values each) and samples/capacities.csv. The profiles carry a diurnal cycle
plus a deep low-availability block each winter, so every pipeline stage has
something to find.
"""
import math
import os

HOURS_PER_YEAR = 8760
YEARS = 2
REGIONS = ["AA", "BB"]
TECHS = ["pv", "onshore"]
CAPACITY = {("AA", "pv"): 400, ("AA", "onshore"): 250, ("BB", "pv"): 150, ("BB", "onshore"): 300}

here = os.path.dirname(os.path.abspath(__file__))


def value(series_idx: int, h: int) -> float:
    hour_of_year = h % HOURS_PER_YEAR
    year = h // HOURS_PER_YEAR
    if hour_of_year < 30 * 24:  # deep winter block in January, deeper in year two
        return 0.06 + 0.01 * series_idx - 0.02 * year
    diurnal = 0.25 * math.sin(2 * math.pi * (h % 24) / 24 + 0.7 * series_idx)
    return min(1.0, max(0.0, 0.45 + diurnal))


with open(os.path.join(here, "availability.csv"), "w") as f:
    f.write("region,technology,hour_index,value\n")
    idx = 0
    for region in REGIONS:
        for tech in TECHS:
            for h in range(YEARS * HOURS_PER_YEAR):
                f.write(f"{region},{tech},{h},{value(idx, h):.6g}\n")
            idx += 1

with open(os.path.join(here, "capacities.csv"), "w") as f:
    f.write("region,technology,capacity_mw\n")
    for (region, tech), mw in CAPACITY.items():
        f.write(f"{region},{tech},{mw}\n")

print("wrote samples/availability.csv and samples/capacities.csv")
