"""Scenario harness: published-table replication, Monte Carlo runs and the
decoder scaling experiment.

Replication and Monte Carlo output are kept apart on purpose. The tables are
regenerated from closed forms fitted to the published rows; their "over 100%"
correction figures are bookkeeping, not physics. Monte Carlo counts come from
actually sampling, decoding and classifying Pauli errors.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import statistics
import time
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

import numpy as np

from .channels import ErrorModel, TrialSeed, sample_error
from .cmat import MAX_STATE_QUBITS, StateVector
from .decode import (
    ResidualClass,
    build_lookup,
    classify_residual,
    count_candidates,
    decode_lookup,
    decode_search,
    encode_state,
    syndrome,
)
from .errors import (
    CodeMismatch,
    NoCorrectionFound,
    UnknownSyndrome,
    ValidationFailed,
)
from .metrics import ComplexityModel, detection_probability, fit_tcorr
from .pauli import PauliString, StabilizerCode, apply_pauli, check_generators, resolve_code
from .qostbc import correct_with_q8

log = logging.getLogger(__name__)

# (N logical, M physical, P correctable)
SCENARIOS: dict[str, tuple[int, int, int]] = {
    "Z1": (3, 8, 1),
    "Z2": (4, 10, 1),
    "Z3": (1, 13, 2),
    "Z4": (1, 29, 5),
}
DETECTED_LEVELS = (50, 60, 70, 80, 90, 100)

# detected, stabilizer corrected, stabilizer %, qostbc corrected, qostbc %
_Z12 = (
    ("50", "49", "98.00", "51.45", "102.90"),
    ("60", "59", "98.33", "61.95", "103.25"),
    ("70", "69", "98.57", "72.45", "103.50"),
    ("80", "79", "98.75", "82.95", "103.69"),
    ("90", "89", "98.89", "93.45", "103.83"),
    ("100", "99", "99.00", "103.95", "103.95"),
)
PUBLISHED_TABLES: dict[str, tuple[tuple[str, ...], ...]] = {
    "Z1": _Z12,
    "Z2": _Z12,
    "Z3": (
        ("50", "48", "96.00", "47.88", "95.76"),
        ("60", "58", "96.67", "57.88", "96.47"),
        ("70", "68", "97.14", "67.88", "96.97"),
        ("80", "78", "97.50", "77.88", "97.35"),
        ("90", "88", "97.78", "87.88", "97.65"),
        ("100", "98", "98.00", "97.88", "97.88"),
    ),
    "Z4": (
        ("50", "45", "90.00", "47.25", "94.50"),
        ("60", "55", "91.67", "57.75", "96.25"),
        ("70", "65", "92.86", "68.25", "97.50"),
        ("80", "75", "93.75", "78.75", "98.44"),
        ("90", "85", "94.44", "89.25", "98.75"),
        ("100", "95", "95.00", "99.75", "99.75"),
    ),
}

_CENT = Decimal("0.01")


def round_half_up(x: Decimal) -> Decimal:
    return x.quantize(_CENT, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class BenchRow:
    scenario: str
    detected: int
    stab_corrected: Decimal
    stab_pct: Decimal
    qostbc_corrected: Decimal
    qostbc_pct: Decimal

    def cells(self) -> list[str]:
        return [
            self.scenario,
            str(self.detected),
            f"{self.stab_corrected:.2f}",
            f"{self.stab_pct:.2f}",
            f"{self.qostbc_corrected:.2f}",
            f"{self.qostbc_pct:.2f}",
        ]


REPLICATION_HEADER = (
    "scenario",
    "detected",
    "stabilizer_corrected",
    "stabilizer_pct",
    "qostbc_corrected",
    "qostbc_pct",
)


def table_row(label: str, detected: int) -> BenchRow:
    """Closed forms matching the published rows.

    stabilizer = D - P; quaternion = 1.05 (D - P), except Z3 where it is
    (D - P) - 0.12.
    """
    p = SCENARIOS[label][2]
    d = Decimal(detected)
    stab = d - p
    q = stab - Decimal("0.12") if label == "Z3" else stab * Decimal("1.05")
    return BenchRow(
        label,
        detected,
        round_half_up(stab),
        round_half_up(stab / d * 100),
        round_half_up(q),
        round_half_up(q / d * 100),
    )


def replicate_tables() -> list[BenchRow]:
    return [table_row(label, d) for label in SCENARIOS for d in DETECTED_LEVELS]


def table_discrepancies(rows: Iterable[BenchRow]) -> list[dict]:
    """Cells where the regenerated value differs from the published one."""
    out = []
    names = REPLICATION_HEADER[2:]
    for row in rows:
        published = {r[0]: r for r in PUBLISHED_TABLES.get(row.scenario, ())}.get(str(row.detected))
        if published is None:
            continue
        for name, ours, theirs in zip(names, row.cells()[2:], published[1:]):
            if Decimal(ours) != Decimal(theirs):
                note = "published percentage is inconsistent with its own corrected count"
                out.append(
                    {
                        "scenario": row.scenario,
                        "detected": row.detected,
                        "column": name,
                        "computed": ours,
                        "published": f"{Decimal(theirs):.2f}",
                        "note": note,
                    }
                )
    return out


def emit_csv(rows: Sequence, path: str | Path, header: Sequence[str] = REPLICATION_HEADER) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row.cells())


def read_replication_csv(path: str | Path) -> list[BenchRow]:
    with open(path, newline="") as fh:
        return [
            BenchRow(
                r["scenario"],
                int(r["detected"]),
                Decimal(r["stabilizer_corrected"]),
                Decimal(r["stabilizer_pct"]),
                Decimal(r["qostbc_corrected"]),
                Decimal(r["qostbc_pct"]),
            )
            for r in csv.DictReader(fh)
        ]


# ---------------------------------------------------------------------------
# SVG


def _svg_panel(
    x0: float, y0: float, w: float, h: float, title: str, series: Sequence[tuple[str, str, Sequence[tuple[float, float]]]],
    xlabel: str, ylabel: str,
) -> list[str]:
    pts = [p for _, _, s in series for p in s]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    if xmax == xmin:
        xmax = xmin + 1
    pad = (ymax - ymin) * 0.1 or abs(ymax) * 0.05 or 1.0
    ymin, ymax = ymin - pad, ymax + pad
    left, right, top, bottom = x0 + 60, x0 + w - 15, y0 + 30, y0 + h - 45

    def sx(v):
        return left + (v - xmin) / (xmax - xmin) * (right - left)

    def sy(v):
        return bottom - (v - ymin) / (ymax - ymin) * (bottom - top)

    out = [
        f'<text x="{x0 + w / 2:.1f}" y="{y0 + 18:.1f}" text-anchor="middle" font-size="13">{title}</text>',
        f'<rect x="{left:.1f}" y="{top:.1f}" width="{right - left:.1f}" height="{bottom - top:.1f}" fill="none" stroke="#444"/>',
        f'<text x="{(left + right) / 2:.1f}" y="{bottom + 35:.1f}" text-anchor="middle" font-size="11">{xlabel}</text>',
        f'<text x="{x0 + 14:.1f}" y="{(top + bottom) / 2:.1f}" text-anchor="middle" font-size="11" '
        f'transform="rotate(-90 {x0 + 14:.1f} {(top + bottom) / 2:.1f})">{ylabel}</text>',
    ]
    for v in sorted(set(xs)):
        out.append(f'<text x="{sx(v):.1f}" y="{bottom + 15:.1f}" text-anchor="middle" font-size="10">{v:g}</text>')
    for v in np.linspace(ymin, ymax, 5):
        out.append(f'<text x="{left - 5:.1f}" y="{sy(v) + 3:.1f}" text-anchor="end" font-size="10">{v:.2f}</text>')
    for i, (name, color, s) in enumerate(series):
        coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in s)
        out.append(f'<polyline class="series" data-series="{name}" points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>')
        ly = top + 14 + 14 * i
        out.append(f'<text x="{left + 8:.1f}" y="{ly:.1f}" font-size="10" fill="{color}">{name}</text>')
    return out


def _svg_document(panels: list[list[str]], width: float, height: float) -> str:
    body = "\n".join(line for p in panels for line in p)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}" font-family="sans-serif">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
    )


def emit_plot(rows: Sequence[BenchRow], path: str | Path) -> None:
    """Percentage against detected errors, one panel per scenario, two series each."""
    labels = list(dict.fromkeys(r.scenario for r in rows))
    pw, ph, cols = 420, 300, 2
    panels = []
    for i, label in enumerate(labels):
        sel = [r for r in rows if r.scenario == label]
        n, m, p = SCENARIOS.get(label, ("?", "?", "?"))
        series = [
            ("Stabilizer", "#1f77b4", [(r.detected, float(r.stab_pct)) for r in sel]),
            ("QOSTBC", "#d62728", [(r.detected, float(r.qostbc_pct)) for r in sel]),
        ]
        x0, y0 = (i % cols) * pw, (i // cols) * ph
        panels.append(_svg_panel(x0, y0, pw, ph, f"{label} (N={n}, M={m}, P={p})", series, "errors detected", "% improvement"))
    rows_n = math.ceil(len(labels) / cols)
    Path(path).write_text(_svg_document(panels, pw * min(cols, len(labels)), ph * rows_n))


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class Scenario:
    label: str
    n_logical: int
    n_physical: int
    t_correct: int
    error_model: ErrorModel
    trials: int
    run_seed: int
    code_file: str | None = None
    decode_weight: int | None = None
    statevector: bool = False

    def __post_init__(self):
        if self.label in SCENARIOS and (self.n_logical, self.n_physical, self.t_correct) != SCENARIOS[self.label]:
            raise ValueError(f"{self.label} is fixed to (N, M, P) = {SCENARIOS[self.label]}")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")

    @classmethod
    def from_dict(cls, d: Mapping, base_dir: str | Path | None = None) -> Scenario:
        label = d["label"]
        defaults = SCENARIOS.get(label, (None, None, None))
        n, m, p = (d.get(k, v) for k, v in zip(("n_logical", "n_physical", "t_correct"), defaults))
        if None in (n, m, p):
            raise ValueError(f"scenario {label!r} needs n_logical, n_physical and t_correct")
        code_file = d.get("code_file")
        if code_file and base_dir is not None and not code_file.startswith("builtin:"):
            cand = Path(base_dir) / code_file
            if not Path(code_file).is_absolute() and not Path(code_file).exists() and cand.exists():
                code_file = str(cand)
        return cls(
            label,
            int(n),
            int(m),
            int(p),
            ErrorModel.from_dict(d.get("error_model", {"kind": "iid", "p_e": 0.0})),
            int(d.get("trials", 1000)),
            int(d.get("run_seed", 0)),
            code_file,
            d.get("decode_weight"),
            bool(d.get("statevector", False)),
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["error_model"] = self.error_model.to_dict()
        return d


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    return Scenario.from_dict(json.loads(path.read_text()), base_dir=path.parent)


def locate_code_file(scenario: Scenario, search: Sequence[str | Path] = (".",)) -> str | None:
    """Explicit ``code_file``, else ``codes/<label>.stab`` under the search roots."""
    if scenario.code_file:
        return scenario.code_file
    for root in search:
        cand = Path(root) / "codes" / f"{scenario.label}.stab"
        if cand.exists():
            return str(cand)
    return None


def prepare_code(scenario: Scenario, code_path: str) -> StabilizerCode:
    code = resolve_code(code_path, validate_code=False)
    report = check_generators(code)
    if not report.ok:
        raise ValidationFailed(f"{code_path}: {report}")
    if code.n != scenario.n_physical or code.k != scenario.n_logical:
        raise CodeMismatch(
            f"{code_path} is [[{code.n},{code.k}]], scenario {scenario.label} needs "
            f"[[{scenario.n_physical},{scenario.n_logical}]]"
        )
    return code


@dataclass
class MonteCarloReport:
    scenario: str
    trials: int
    run_seed: int
    detected: int = 0
    corrected: int = 0
    in_stabilizer: int = 0
    logical_errors: int = 0
    undetected_nonidentity: int = 0
    nonidentity: int = 0
    mean_fidelity: float | None = None
    mean_fidelity_q8: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def empirical_pd(self) -> float:
        return self.detected / self.trials if self.trials else 0.0

    @property
    def empirical_error_rate(self) -> float:
        """Fraction of trials with any nonidentity error, detected or not."""
        return self.nonidentity / self.trials if self.trials else 0.0

    @property
    def correction_rate(self) -> float:
        return self.corrected / self.nonidentity if self.nonidentity else 1.0

    def cells(self) -> list[str]:
        return [
            self.scenario,
            str(self.trials),
            str(self.detected),
            str(self.corrected),
            str(self.in_stabilizer),
            str(self.logical_errors),
            str(self.undetected_nonidentity),
            f"{self.empirical_pd:.6f}",
            str(self.run_seed),
        ]


MONTE_CARLO_HEADER = (
    "scenario",
    "trials",
    "detected",
    "corrected",
    "in_stabilizer",
    "logical_errors",
    "undetected_nonidentity",
    "empirical_pd",
    "seed",
)

# per-trial outcome codes
_NO_ERROR, _FIXED, _FIXED_DEGENERATE, _FAILED = range(4)


@dataclass(frozen=True)
class _TrialContext:
    code: StabilizerCode
    model: ErrorModel
    run_seed: int
    decode_weight: int
    use_table: bool
    statevector: bool


def _decoder(ctx: _TrialContext):
    if ctx.use_table:
        table = build_lookup(ctx.code, ctx.decode_weight)
        return lambda s: decode_lookup(table, s).correction
    return lambda s: decode_search(ctx.code, s, ctx.decode_weight).correction


def _logical_state(code: StabilizerCode, run_seed: int) -> StateVector:
    # reserved trial index, never reached by sampling
    rng = TrialSeed(run_seed, (1 << 64) - 1).generator()
    return encode_state(code, StateVector.random(code.k, rng))


def _run_chunk(ctx: _TrialContext, start: int, stop: int) -> list[tuple[int, bool, bool, float, float]]:
    """Outcome, detected flag, undetected-nonidentity flag and fidelities per trial."""
    decode = _decoder(ctx)
    encoded = _logical_state(ctx.code, ctx.run_seed) if ctx.statevector else None
    out = []
    for t in range(start, stop):
        err = sample_error(ctx.model, ctx.code.n, TrialSeed(ctx.run_seed, t))
        if err.is_identity:
            out.append((_NO_ERROR, False, False, 1.0, 1.0))
            continue
        s = syndrome(ctx.code, err)
        detected = s != 0
        if detected:
            try:
                corr = decode(s)
            except (UnknownSyndrome, NoCorrectionFound):
                corr = None
        else:
            corr = PauliString.identity(ctx.code.n)
        if corr is None:
            outcome = _FAILED
        else:
            cls = classify_residual(ctx.code, corr * err)
            if not cls.success:
                outcome = _FAILED
            else:
                outcome = _FIXED if cls is ResidualClass.IDENTITY else _FIXED_DEGENERATE
        fid = fid_q8 = float("nan")
        if encoded is not None:
            damaged = apply_pauli(err, encoded.amplitudes)
            fixed = damaged if corr is None else apply_pauli(corr, damaged)
            fid = float(abs(np.vdot(encoded.amplitudes, fixed)) ** 2)
            if corr is None:
                fid_q8 = fid
            else:
                q8_fixed = correct_with_q8(StateVector(damaged), corr)
                fid_q8 = float(abs(np.vdot(encoded.amplitudes, q8_fixed.amplitudes)) ** 2)
        out.append((outcome, detected, not detected, fid, fid_q8))
    return out


def run_monte_carlo(
    scenario: Scenario, code: StabilizerCode, workers: int = 1, chunk: int = 2000
) -> MonteCarloReport:
    """Sample, decode and classify ``scenario.trials`` errors.

    Counts are exact integers and per-trial seeds do not depend on ``workers``
    or ``chunk``, so the report is identical for any parallelism setting.
    """
    decode_weight = scenario.decode_weight if scenario.decode_weight is not None else scenario.t_correct
    use_table = count_candidates(code.n, decode_weight) <= 10**6
    statevector = scenario.statevector and code.n <= MAX_STATE_QUBITS
    ctx = _TrialContext(code, scenario.error_model, scenario.run_seed, decode_weight, use_table, statevector)
    bounds = [(a, min(a + chunk, scenario.trials)) for a in range(0, scenario.trials, chunk)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, [ctx] * len(bounds), *zip(*bounds)))
    else:
        parts = [_run_chunk(ctx, a, b) for a, b in bounds]
    outcomes = [o for part in parts for o in part]

    rep = MonteCarloReport(scenario.label, scenario.trials, scenario.run_seed)
    for outcome, detected, undetected, _, _ in outcomes:
        if outcome == _NO_ERROR:
            continue
        rep.nonidentity += 1
        rep.detected += detected
        rep.undetected_nonidentity += undetected
        if outcome == _FAILED:
            rep.logical_errors += 1
        else:
            rep.corrected += 1
            rep.in_stabilizer += outcome == _FIXED_DEGENERATE
    if statevector and outcomes:
        rep.mean_fidelity = math.fsum(o[3] for o in outcomes) / len(outcomes)
        rep.mean_fidelity_q8 = math.fsum(o[4] for o in outcomes) / len(outcomes)
    rep.extra["decoder"] = "lookup" if use_table else "search"
    rep.extra["decode_weight"] = decode_weight
    if scenario.error_model.kind == "iid":
        p = detection_probability(scenario.error_model.p_e, code.n)
        rep.extra["predicted_pd"] = p
        rep.extra["pd_sigma"] = math.sqrt(p * (1 - p) / scenario.trials) if scenario.trials else 0.0
        # zero-syndrome nonidentity errors are real errors the syndrome cannot see
        rep.extra["pd_adjustment"] = rep.undetected_nonidentity / scenario.trials if scenario.trials else 0.0
    return rep


def summarize(rep: MonteCarloReport) -> dict:
    d = {k: v for k, v in asdict(rep).items() if k != "extra"}
    d.update(rep.extra)
    d["empirical_pd"] = rep.empirical_pd
    d["empirical_error_rate"] = rep.empirical_error_rate
    d["correction_rate"] = rep.correction_rate
    return d


# ---------------------------------------------------------------------------
# scaling


@dataclass(frozen=True)
class ScalingRow:
    code: str
    n: int
    k: int
    d: int
    t: int
    samples: int
    median_decode_s: float
    model_decode_s: float = float("nan")

    def cells(self) -> list[str]:
        return [
            self.code,
            str(self.n),
            str(self.k),
            str(self.d),
            str(self.t),
            str(self.samples),
            f"{self.median_decode_s:.9f}",
            f"{self.model_decode_s:.9f}",
        ]


SCALING_HEADER = ("code", "n", "k", "d", "t", "samples", "median_decode_s", "model_decode_s")


def _correctable_syndromes(code: StabilizerCode, samples: int, seed: int) -> list[int]:
    t = max(code.t_correct, 1)
    out = []
    for i in range(samples):
        w = 1 + i % t
        err = sample_error(ErrorModel.fixed_weight(w), code.n, TrialSeed(seed, i))
        out.append(syndrome(code, err))
    return out


def scaling_experiment(
    codes: Sequence[StabilizerCode], samples: int = 1000, runs: int = 3, seed: int = 7
) -> tuple[list[ScalingRow], ComplexityModel]:
    """Median per-decode time of ``decode_search`` for each code, plus the
    ``c * N * log2(M)`` fit across codes."""
    rows = []
    for code in sorted(codes, key=lambda c: (c.n, c.k)):
        t = max(code.t_correct, 1)
        synds = _correctable_syndromes(code, samples, seed)
        decode_search(code, synds[0], t)  # builds the cached half-weight index
        per_run = []
        for _ in range(runs):
            start = time.perf_counter()
            for s in synds:
                decode_search(code, s, t)
            per_run.append((time.perf_counter() - start) / len(synds))
        rows.append(ScalingRow(code.label, code.n, code.k, code.d_claimed, t, samples, statistics.median(per_run)))
    model = fit_tcorr([(r.k, r.n, r.median_decode_s) for r in rows])
    rows = [
        ScalingRow(r.code, r.n, r.k, r.d, r.t, r.samples, r.median_decode_s, model.predict(r.k, r.n)) for r in rows
    ]
    return rows, model


def emit_scaling_plot(rows: Sequence[ScalingRow], path: str | Path) -> None:
    series = [
        ("measured", "#1f77b4", [(r.n, r.median_decode_s * 1e6) for r in rows]),
        ("c N log2 M fit", "#d62728", [(r.n, r.model_decode_s * 1e6) for r in rows]),
    ]
    panel = _svg_panel(0, 0, 520, 340, "decode time vs physical qubits", series, "physical qubits M", "median decode time (us)")
    Path(path).write_text(_svg_document([panel], 520, 340))
