"""Syndromes, minimum-weight decoders, residual classification, distance checks
and small-n statevector encoding.

Syndromes are plain ints: bit ``i`` is set iff the error anticommutes with
generator ``i``.

Candidate errors are ordered canonically: by weight, then by support tuple
(lexicographic), then by letter tuple with X < Y < Z. Both decoders return the
first candidate in this order that matches the syndrome, so they agree
exactly and are deterministic.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .cmat import MAX_STATE_QUBITS, StateVector
from .errors import (
    BudgetExceeded,
    LengthMismatch,
    MissingLogicals,
    NoCorrectionFound,
    SyndromeMismatch,
    TooLarge,
    UnknownSyndrome,
    ZeroProjection,
)
from .pauli import LETTERS, PauliString, StabilizerCode, apply_pauli, in_span, reduce

Term = tuple[tuple[int, ...], tuple[int, ...]]  # (support, letter indices)


def syndrome(code: StabilizerCode, error: PauliString) -> int:
    if error.n != code.n:
        raise LengthMismatch(f"error on {error.n} qubits for a code on {code.n}")
    s = 0
    for i, g in enumerate(code.generators):
        if ((error.x & g.z) ^ (error.z & g.x)).bit_count() & 1:
            s |= 1 << i
    return s


def syndrome_bits(code: StabilizerCode, s: int) -> str:
    """Generator-ordered bit string, e.g. '001010'."""
    return "".join(str((s >> i) & 1) for i in range(len(code.generators)))


def count_candidates(n: int, max_weight: int) -> int:
    return sum(3**w * math.comb(n, w) for w in range(min(max_weight, n) + 1))


def _term_pauli(n: int, term: Term) -> PauliString:
    support, letters = term
    return PauliString.from_terms(n, ((q, LETTERS[l]) for q, l in zip(support, letters)))


@functools.lru_cache(maxsize=16)
def _contributions(code: StabilizerCode) -> tuple[tuple[int, int, int], ...]:
    """Syndrome of X, Y, Z on each qubit."""
    out = []
    for q in range(code.n):
        out.append(tuple(syndrome(code, PauliString.single(code.n, q, l)) for l in LETTERS))
    return tuple(out)


def _enumerate(code: StabilizerCode, w: int) -> Iterator[tuple[Term, int]]:
    """All weight-w errors in canonical order with their syndromes."""
    contrib = _contributions(code)
    for support in itertools.combinations(range(code.n), w):
        cols = [contrib[q] for q in support]
        for letters in itertools.product(range(3), repeat=w):
            s = 0
            for c, l in zip(cols, letters):
                s ^= c[l]
            yield (support, letters), s


@functools.lru_cache(maxsize=16)
def _weight_list(code: StabilizerCode, w: int) -> tuple[tuple[Term, int], ...]:
    return tuple(_enumerate(code, w))


@functools.lru_cache(maxsize=16)
def _weight_index(code: StabilizerCode, w: int) -> dict[int, list[Term]]:
    index: dict[int, list[Term]] = {}
    for term, s in _weight_list(code, w):
        index.setdefault(s, []).append(term)
    return index


def _matches(code: StabilizerCode, s: int, w: int) -> Iterator[Term]:
    """Every weight-w error with syndrome ``s`` (meet in the middle).

    Each candidate is split into its ``ceil(w/2)`` lowest-qubit terms and the
    rest, so it is produced exactly once.
    """
    if w == 0:
        if s == 0:
            yield ((), ())
        return
    a, b = (w + 1) // 2, w // 2
    left = _weight_index(code, a)
    right = _weight_list(code, b) if b else ((((), ()), 0),)
    for (rs, rl), rsyn in right:
        for ls, ll in left.get(s ^ rsyn, ()):
            if not rs or ls[-1] < rs[0]:
                yield ls + rs, ll + rl


# ---------------------------------------------------------------------------
# decoders


@dataclass(frozen=True)
class DecodeResult:
    correction: PauliString
    weight: int
    method: str  # "lookup" | "search"


@dataclass(frozen=True)
class SyndromeTable:
    code: StabilizerCode
    max_weight: int
    table: dict[int, PauliString]

    def __len__(self) -> int:
        return len(self.table)


def build_lookup(code: StabilizerCode, max_weight: int, budget: int = 10**6) -> SyndromeTable:
    """Syndrome -> minimum-weight error, first writer wins in canonical order."""
    total = count_candidates(code.n, max_weight)
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed budget {budget}")
    table: dict[int, PauliString] = {}
    for w in range(min(max_weight, code.n) + 1):
        for term, s in _enumerate(code, w):
            if s not in table:
                table[s] = _term_pauli(code.n, term)
    return SyndromeTable(code, max_weight, table)


def decode_lookup(table: SyndromeTable, s: int) -> DecodeResult:
    try:
        corr = table.table[s]
    except KeyError:
        raise UnknownSyndrome(f"syndrome {s:#x} not in table (weight > {table.max_weight})") from None
    return DecodeResult(corr, corr.weight(), "lookup")


def decode_search(
    code: StabilizerCode, s: int, max_weight: int, budget: int = 4 * 10**6
) -> DecodeResult:
    """Minimum-weight decoding without a precomputed table.

    Equivalent to scanning candidates in canonical order and returning the
    first whose syndrome is ``s``; implemented by meeting in the middle over
    half-weight syndrome indexes, which are cached per code.
    """
    if max_weight > code.n:
        raise ValueError(f"max_weight {max_weight} exceeds n={code.n}")
    half = (max_weight + 1) // 2
    if 3**half * math.comb(code.n, half) > budget:
        raise BudgetExceeded(f"half-weight index for weight {max_weight} exceeds budget {budget}")
    for w in range(max_weight + 1):
        best = min(_matches(code, s, w), default=None)
        if best is not None:
            corr = _term_pauli(code.n, best)
            return DecodeResult(corr, w, "search")
    raise NoCorrectionFound(max_weight)


# ---------------------------------------------------------------------------
# residuals and distance


class ResidualClass(enum.Enum):
    IDENTITY = "Identity"
    IN_STABILIZER = "InStabilizer"
    LOGICAL_ERROR = "LogicalError"

    @property
    def success(self) -> bool:
        return self is not ResidualClass.LOGICAL_ERROR


@functools.lru_cache(maxsize=16)
def _stabilizer_basis(code: StabilizerCode) -> tuple[int, ...]:
    return tuple(code.stabilizer_basis())


def classify_residual(code: StabilizerCode, residual: PauliString) -> ResidualClass:
    """Class of a zero-syndrome residual operator."""
    if residual.is_identity:
        return ResidualClass.IDENTITY
    if in_span(residual.vector, _stabilizer_basis(code)):
        return ResidualClass.IN_STABILIZER
    return ResidualClass.LOGICAL_ERROR


def residual_class(code: StabilizerCode, error: PauliString, correction: PauliString) -> ResidualClass:
    if syndrome(code, error) != syndrome(code, correction):
        raise SyndromeMismatch("correction does not reproduce the error syndrome")
    return classify_residual(code, correction * error)


@dataclass(frozen=True)
class MinLogicalWeightReport:
    upto_weight: int
    min_weight: int | None
    witness: PauliString | None
    candidates: int

    @property
    def found(self) -> bool:
        return self.min_weight is not None

    def __str__(self) -> str:
        if self.min_weight is None:
            return f"no logical operator of weight <= {self.upto_weight} ({self.candidates} candidates)"
        return f"logical operator of weight {self.min_weight}: {self.witness}"


def verify_distance(code: StabilizerCode, upto_weight: int, budget: int = 10**8) -> MinLogicalWeightReport:
    """Smallest-weight zero-syndrome Pauli outside the stabilizer group.

    Covers all ``sum 3^w C(n, w)`` candidates up to ``upto_weight``; only
    zero-syndrome ones are materialized, via the same half-weight indexes as
    the search decoder.
    """
    upto_weight = min(upto_weight, code.n)
    total = count_candidates(code.n, upto_weight)
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed budget {budget}")
    basis = _stabilizer_basis(code)
    for w in range(1, upto_weight + 1):
        hits = sorted(_matches(code, 0, w))
        for term in hits:
            p = _term_pauli(code.n, term)
            if reduce(p.vector, basis):
                return MinLogicalWeightReport(upto_weight, w, p, total)
    return MinLogicalWeightReport(upto_weight, None, None, total)


# ---------------------------------------------------------------------------
# statevector encoding


def _project(code: StabilizerCode, amps: np.ndarray) -> np.ndarray:
    for op in code.generators + code.logical_z:
        amps = 0.5 * (amps + apply_pauli(op, amps))
    return amps


def logical_zero(code: StabilizerCode) -> np.ndarray:
    """|0...0>_L as the image of a fixed seed state under the code projector."""
    if code.n > MAX_STATE_QUBITS:
        raise TooLarge(f"{code.n} qubits exceeds statevector cap {MAX_STATE_QUBITS}")
    if not code.has_logicals:
        raise MissingLogicals(f"{code.label} has no logical operators")
    dim = 1 << code.n
    seeds = [np.eye(1, dim, 0, dtype=complex).ravel(), np.full(dim, dim**-0.5, dtype=complex)]
    rng = np.random.default_rng(0x5EED)
    seeds.append(rng.normal(size=dim) + 1j * rng.normal(size=dim))
    for seed in seeds:
        v = _project(code, seed)
        nrm = np.linalg.norm(v)
        if nrm > 1e-6 * np.linalg.norm(seed):
            return v / nrm
    raise ZeroProjection("code projector annihilates every seed; logicals inconsistent with generators")


def encode_state(code: StabilizerCode, logical: StateVector) -> StateVector:
    """Map a k-qubit state into the code space.

    Logical basis state |b_0 ... b_{k-1}> becomes prod_j LX_j^{b_j} |0>_L.
    """
    zero = logical_zero(code)
    if logical.n_qubits != code.k:
        raise LengthMismatch(f"{logical.n_qubits}-qubit state for a code with k={code.k}")
    out = np.zeros_like(zero)
    for index, alpha in enumerate(logical.amplitudes):
        if alpha == 0:
            continue
        v = zero
        for j in range(code.k):
            if (index >> (code.k - 1 - j)) & 1:
                v = apply_pauli(code.logical_x[j], v)
        out += alpha * v
    return StateVector.from_amplitudes(out)


def apply_error(state: StateVector, p: PauliString) -> StateVector:
    return StateVector(apply_pauli(p, state.amplitudes))


def stabilizer_expectations(code: StabilizerCode, state: StateVector) -> list[float]:
    return [float(np.vdot(state.amplitudes, apply_pauli(g, state.amplitudes)).real) for g in code.generators]
