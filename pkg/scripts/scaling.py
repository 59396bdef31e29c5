#!/usr/bin/env python3
"""Time search decoding across codes and fit t = c * N * log2(M)."""

import argparse
from pathlib import Path

from quatqec import bench
from quatqec.pauli import resolve_code

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CODES = ["builtin:steane", "builtin:shor", str(ROOT / "codes" / "Z1.stab"), str(ROOT / "codes" / "Z3.stab")]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--codes", nargs="+", default=DEFAULT_CODES)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--runs", type=int, default=3)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    codes = [resolve_code(c) for c in args.codes]
    rows, model = bench.scaling_experiment(codes, samples=args.samples, runs=args.runs)
    bench.emit_csv(rows, out / "scaling.csv", bench.SCALING_HEADER)
    bench.emit_scaling_plot(rows, out / "scaling.svg")
    for r in rows:
        print(" ".join(r.cells()))
    print(f"c = {model.c:.3e} s, R^2 = {model.r_squared:.3f}")


if __name__ == "__main__":
    main()
