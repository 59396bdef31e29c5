#!/usr/bin/env python3
"""Regenerate the four published result tables and compare them cell by cell."""

import argparse
import json
from decimal import Decimal
from pathlib import Path

from quatqec import bench


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    rows = bench.replicate_tables()
    bench.emit_csv(rows, out / "tables.csv")
    bench.emit_plot(rows, out / "tables.svg")
    notes = bench.table_discrepancies(rows)
    (out / "tables.discrepancies.json").write_text(json.dumps(notes, indent=2) + "\n")

    matched = total = 0
    for r in rows:
        pub = {p[0]: p for p in bench.PUBLISHED_TABLES[r.scenario]}[str(r.detected)]
        for mine, theirs in zip(r.cells()[2:], pub[1:]):
            matched += Decimal(mine) == Decimal(theirs)
            total += 1
    print(f"{matched}/{total} cells match the published tables")
    for n in notes:
        print(f"  {n['scenario']} D={n['detected']}: computed {n['computed']}, published {n['published']}")


if __name__ == "__main__":
    main()
