#!/usr/bin/env python3
"""Run every scenario JSON in a directory and print one summary line each."""

import argparse
import json
from pathlib import Path

from quatqec import bench

ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scenarios", default=str(ROOT / "scenarios"))
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    for path in sorted(Path(args.scenarios).glob("*.json")):
        sc = bench.load_scenario(path)
        code_path = bench.locate_code_file(sc, [ROOT, Path.cwd()])
        if code_path is None:
            print(f"{sc.label}: no code file, skipped")
            continue
        code = bench.prepare_code(sc, code_path)
        rep = bench.run_monte_carlo(sc, code, workers=args.workers)
        bench.emit_csv([rep], out / f"{path.stem}.csv", bench.MONTE_CARLO_HEADER)
        summary = bench.summarize(rep)
        (out / f"{path.stem}.json").write_text(json.dumps(summary, indent=2) + "\n")
        line = f"{sc.label}: {rep.trials} trials, error rate {rep.empirical_error_rate:.4f}"
        if "predicted_pd" in summary:
            line += f" (predicted {summary['predicted_pd']:.4f})"
        line += f", correction rate {rep.correction_rate:.4f}"
        if rep.mean_fidelity is not None:
            line += f", mean fidelity {rep.mean_fidelity:.4f}"
        print(line)


if __name__ == "__main__":
    main()
