"""Command line entry point.

    quatqec bench replicate [--out FILE.csv] [--plot FILE.svg]
    quatqec bench monte-carlo --scenario FILE.json [--out FILE.csv] [--workers N]
    quatqec bench scaling --codes A.stab B.stab ... [--out FILE.csv] [--plot FILE.svg]
    quatqec verify --code FILE.stab --max-weight W
    quatqec design --alamouti s1_re,s1_im,s2_re,s2_im
    quatqec metrics pd --pe P --n N
    quatqec metrics df --f F

Exit status: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import bench
from .decode import verify_distance
from .designs import alamouti_block, orthogonality_degree, quasi_orthogonality_deviation
from .errors import QecError
from .metrics import detection_probability, paper_df_relation
from .pauli import check_generators, resolve_code

log = logging.getLogger("quatqec")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _write_csv(rows, header, out: str | None) -> None:
    if out:
        bench.emit_csv(rows, out, header)
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(r.cells())


def cmd_replicate(args) -> int:
    rows = bench.replicate_tables()
    notes = bench.table_discrepancies(rows)
    _write_csv(rows, bench.REPLICATION_HEADER, args.out)
    if args.out:
        side = Path(args.out).with_suffix(".discrepancies.json")
        side.write_text(json.dumps(notes, indent=2) + "\n")
        log.info("wrote %s and %s", args.out, side)
    for n in notes:
        print("DISCREPANCY " + json.dumps(n, sort_keys=True), file=sys.stderr)
    if args.plot:
        bench.emit_plot(rows, args.plot)
    return EXIT_OK


def cmd_monte_carlo(args) -> int:
    scenario = bench.load_scenario(args.scenario)
    roots = [Path.cwd(), Path(args.scenario).resolve().parent, Path(args.scenario).resolve().parent.parent]
    code_path = bench.locate_code_file(scenario, roots)
    if code_path is None:
        if scenario.label not in bench.SCENARIOS:
            log.error("no code file for scenario %s", scenario.label)
            return EXIT_FAIL
        log.warning("no codes/%s.stab found; emitting replication rows only", scenario.label)
        rows = [r for r in bench.replicate_tables() if r.scenario == scenario.label]
        _write_csv(rows, bench.REPLICATION_HEADER, args.out)
        return EXIT_OK
    code = bench.prepare_code(scenario, code_path)
    report = bench.run_monte_carlo(scenario, code, workers=args.workers)
    _write_csv([report], bench.MONTE_CARLO_HEADER, args.out)
    if args.report:
        Path(args.report).write_text(json.dumps(bench.summarize(report), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_scaling(args) -> int:
    codes = [resolve_code(c) for c in args.codes]
    rows, model = bench.scaling_experiment(codes, samples=args.samples, runs=args.runs)
    _write_csv(rows, bench.SCALING_HEADER, args.out)
    print(f"# fit: time = {model.c:.3e} * N * log2(M) s, R^2 = {model.r_squared:.4f}", file=sys.stderr)
    if args.plot:
        bench.emit_scaling_plot(rows, args.plot)
    return EXIT_OK


def cmd_verify(args) -> int:
    code = resolve_code(args.code, validate_code=False)
    report = check_generators(code)
    print(f"check_generators: {report}")
    if not report.ok:
        return EXIT_FAIL
    dist = verify_distance(code, args.max_weight, budget=args.budget)
    print(f"verify_distance: {dist}")
    if dist.found and dist.min_weight < code.d_claimed:
        print(f"FAIL: claimed distance {code.d_claimed} but found a weight-{dist.min_weight} logical")
        return EXIT_FAIL
    return EXIT_OK


def cmd_design(args) -> int:
    try:
        s1r, s1i, s2r, s2i = (float(v) for v in args.alamouti.split(","))
    except ValueError:
        print("--alamouti expects four comma-separated numbers", file=sys.stderr)
        return EXIT_USAGE
    c = alamouti_block(complex(s1r, s1i), complex(s2r, s2i))
    with np.printoptions(precision=4, suppress=True):
        print(c.entries)
    print(f"{'orthogonality_degree':>22} {'deviation':>12} {'size':>6}")
    print(f"{orthogonality_degree(c):>22.6g} {quasi_orthogonality_deviation(c):>12.6g} {c.t_slots}x{c.n_elements:<4}")
    return EXIT_OK


def cmd_metrics(args) -> int:
    if args.metric == "pd":
        print(f"{detection_probability(args.pe, args.n):.12g}")
    else:
        print(f"{paper_df_relation(args.f):.12g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quatqec", description="Quaternion-coded QEC simulation toolkit")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="table replication, Monte Carlo and scaling runs")
    bsub = b.add_subparsers(dest="bench_command", required=True)

    r = bsub.add_parser("replicate", help="regenerate the published result tables")
    r.add_argument("--out")
    r.add_argument("--plot")
    r.set_defaults(func=cmd_replicate)

    m = bsub.add_parser("monte-carlo", help="sample, decode and classify errors for a scenario")
    m.add_argument("--scenario", required=True)
    m.add_argument("--out")
    m.add_argument("--report", help="also write a JSON summary here")
    m.add_argument("--workers", type=int, default=1)
    m.set_defaults(func=cmd_monte_carlo)

    s = bsub.add_parser("scaling", help="time the decoder across codes and fit c*N*log2(M)")
    s.add_argument("--codes", nargs="+", required=True)
    s.add_argument("--out")
    s.add_argument("--plot")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--runs", type=int, default=3)
    s.set_defaults(func=cmd_scaling)

    v = sub.add_parser("verify", help="validate a code file and search for low-weight logicals")
    v.add_argument("--code", required=True)
    v.add_argument("--max-weight", type=int, required=True)
    v.add_argument("--budget", type=int, default=10**8)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("design", help="print an Alamouti block and its orthogonality metrics")
    d.add_argument("--alamouti", required=True, metavar="S1RE,S1IM,S2RE,S2IM")
    d.set_defaults(func=cmd_design)

    mt = sub.add_parser("metrics", help="closed-form metrics")
    msub = mt.add_subparsers(dest="metric", required=True)
    pd = msub.add_parser("pd", help="detection probability 1-(1-p_e)^N")
    pd.add_argument("--pe", type=float, required=True)
    pd.add_argument("--n", type=int, required=True)
    pd.set_defaults(func=cmd_metrics)
    df = msub.add_parser("df", help="tabulated relation D = (1-F)/2")
    df.add_argument("--f", type=float, required=True)
    df.set_defaults(func=cmd_metrics)
    return ap


def main(argv: list[str] | None = None) -> int:
    # allow_abbrev stays on; argparse exits with status 2 on usage errors
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (QecError, FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
