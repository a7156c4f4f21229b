"""Download the UCI lung-cancer and promoters datasets into the relieve cache.

Writes ``<name>.csv`` (class last, ``?`` for missing) and ``<name>.schema.json``
(every feature nominal) under $RELIEVE_CACHE_DIR, default ~/.cache/relieve.
Afterwards the CLI accepts ``--data uci:lung-cancer``.
"""

import argparse
import json
import sys
import urllib.request

from relieve.cli import cache_dir, write_atomic

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"
SOURCES = {
    "lung-cancer": f"{BASE}/lung-cancer/lung-cancer.data",
    "promoters": f"{BASE}/molecular-biology/promoter-gene-sequences/promoters.data",
}


def lung_rows(text):
    # class label first, then 56 attributes
    for line in text.splitlines():
        cells = [c.strip() for c in line.split(",")]
        if len(cells) == 57:
            yield cells[1:] + [cells[0]]


def promoter_rows(text):
    # "+,name,<57 nucleotides>"
    for line in text.splitlines():
        parts = [p.strip() for p in line.split(",")]
        if len(parts) == 3:
            yield list(parts[2].lower()) + [parts[0]]


def convert(name, text):
    rows = list(lung_rows(text) if name == "lung-cancer" else promoter_rows(text))
    if not rows:
        raise ValueError(f"no rows recognised in {name}")
    n = len(rows[0]) - 1
    prefix = "A" if name == "lung-cancer" else "p"
    header = [f"{prefix}{j + 1}" for j in range(n)] + ["class"]
    csv = "\n".join(",".join(r) for r in [header, *rows]) + "\n"
    schema = {h: "nominal" for h in header[:-1]}
    return csv, schema


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", default=sorted(SOURCES), choices=sorted(SOURCES))
    args = ap.parse_args(argv)
    root = cache_dir()
    for name in args.names:
        try:
            with urllib.request.urlopen(SOURCES[name], timeout=30) as resp:
                text = resp.read().decode("utf-8")
        except OSError as exc:
            print(f"{name}: download failed ({exc})", file=sys.stderr)
            return 3
        csv, schema = convert(name, text)
        write_atomic(root / f"{name}.csv", csv)
        write_atomic(root / f"{name}.schema.json", json.dumps(schema, indent=2) + "\n")
        print(f"{name}: {csv.count(chr(10)) - 1} rows -> {root / (name + '.csv')}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
