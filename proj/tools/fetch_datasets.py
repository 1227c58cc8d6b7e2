#!/usr/bin/env python3
"""Download and normalize the two public datasets used by the shipped configs.

Writes into data/ (created if needed):
  adult.csv           census income records, one header row, '?' kept as the
                      missing marker so the ingest step can drop incomplete rows
  elnino.csv          buoy readings, complete records only, with a derived
                      season column
  elnino_schema.json  schema for elnino.csv with median-split bin edges
                      computed from the data

The census schema (configs/adult_schema.json) is static and ships with the
repository; the buoy schema depends on medians of the downloaded data, so it
is generated here.
"""

import argparse
import csv
import gzip
import io
import json
import os
import statistics
import sys
import urllib.request

ADULT_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/adult/adult.data"
ELNINO_URL = (
    "https://archive.ics.uci.edu/ml/machine-learning-databases/el_nino-mld/tao-all2.dat.gz"
)

ADULT_COLUMNS = [
    "age", "workclass", "fnlwgt", "education", "education-num",
    "marital-status", "occupation", "relationship", "race", "sex",
    "capital-gain", "capital-loss", "hours-per-week", "native-country",
    "salary",
]

# tao-all2 column order (whitespace separated, '.' marks a missing reading)
ELNINO_RAW_COLUMNS = [
    "obs", "year", "month", "day", "date", "latitude", "longitude",
    "zon_winds", "mer_winds", "humidity", "air_temp", "ss_temp",
]


def download(url: str) -> bytes:
    print(f"downloading {url}")
    with urllib.request.urlopen(url, timeout=120) as resp:
        return resp.read()


def season_of(month: int) -> int:
    # Dec-Feb, Mar-May, Jun-Aug, Sep-Nov
    return {12: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1,
            6: 2, 7: 2, 8: 2, 9: 3, 10: 3, 11: 3}[month]


def fetch_adult(dest: str) -> None:
    raw = download(ADULT_URL).decode("utf-8")
    rows = []
    for line in raw.splitlines():
        line = line.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != len(ADULT_COLUMNS):
            raise SystemExit(f"unexpected census record with {len(fields)} fields")
        rows.append(fields)

    out_path = f"{dest}/adult.csv"
    with open(out_path, "w", newline="") as out:
        writer = csv.writer(out)
        writer.writerow(ADULT_COLUMNS)
        writer.writerows(rows)

    complete = sum(1 for r in rows if "?" not in r)
    print(f"wrote {out_path}: {len(rows)} rows ({complete} complete)")
    if complete != 30162:
        print("warning: expected 30162 complete rows; the source file may have changed",
              file=sys.stderr)


def fetch_elnino(dest: str) -> None:
    gz = download(ELNINO_URL)
    text = gzip.decompress(gz).decode("utf-8")

    kept = []
    total = 0
    for line in io.StringIO(text):
        fields = line.split()
        if not fields:
            continue
        total += 1
        if len(fields) != len(ELNINO_RAW_COLUMNS) or "." in fields:
            continue
        rec = dict(zip(ELNINO_RAW_COLUMNS, fields))
        kept.append([
            str(season_of(int(rec["month"]))),
            rec["latitude"], rec["longitude"], rec["zon_winds"],
            rec["mer_winds"], rec["humidity"], rec["air_temp"], rec["ss_temp"],
        ])

    header = ["season", "latitude", "longitude", "zonal_wind",
              "meridional_wind", "humidity", "air_temp", "sea_surface_temp"]
    out_path = f"{dest}/elnino.csv"
    with open(out_path, "w", newline="") as out:
        writer = csv.writer(out)
        writer.writerow(header)
        writer.writerows(kept)
    print(f"wrote {out_path}: kept {len(kept)} of {total} records")
    if len(kept) != 93935:
        print("warning: expected 93935 complete records; the source file may have changed",
              file=sys.stderr)

    variables = [{"name": "season", "kind": "categorical",
                  "states": ["0", "1", "2", "3"]}]
    for i, name in enumerate(header[1:], start=1):
        median = statistics.median(float(r[i]) for r in kept)
        variables.append({"name": name, "kind": "continuous",
                          "bin_edges": [median]})
    schema_path = f"{dest}/elnino_schema.json"
    with open(schema_path, "w") as out:
        json.dump({"variables": variables}, out, indent=2)
        out.write("\n")
    print(f"wrote {schema_path} (median splits from the downloaded data)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dest", default="data", help="output directory")
    parser.add_argument("--only", choices=["adult", "elnino"],
                        help="fetch a single dataset")
    args = parser.parse_args()

    os.makedirs(args.dest, exist_ok=True)
    if args.only in (None, "adult"):
        fetch_adult(args.dest)
    if args.only in (None, "elnino"):
        fetch_elnino(args.dest)


if __name__ == "__main__":
    main()
