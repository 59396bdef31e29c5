"""(Quasi-)orthogonal design matrices.

A design is a ``T x N`` grid (rows are time slots, columns are transmit
elements) of complex or quaternion symbols. Quaternion designs are measured
through their 2x2 complex embedding, so the same metric code serves both.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, TooFewCodewords, TooFewColumns
from .quat import Quaternion, quaternion_to_matrix


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """``entries`` is a complex array, or an object array of ``Quaternion``."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries)
        if e.ndim != 2 or e.shape[0] < 1 or e.shape[1] < 1:
            raise ValueError(f"design must be a non-empty 2-d grid, got shape {e.shape}")
        if e.dtype == object:
            if not all(isinstance(v, Quaternion) for v in e.flat):
                raise TypeError("object-valued designs must hold Quaternion entries")
        else:
            e = e.astype(complex)
            if not np.all(np.isfinite(e)):
                raise ValueError("design has non-finite entries")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def is_quaternion(self) -> bool:
        return self.entries.dtype == object

    @property
    def t_slots(self) -> int:
        return self.entries.shape[0]

    @property
    def n_elements(self) -> int:
        return self.entries.shape[1]

    def to_complex(self) -> np.ndarray:
        """Complex matrix; quaternion entries become 2x2 blocks."""
        if not self.is_quaternion:
            return np.array(self.entries)
        return np.block([[quaternion_to_matrix(q) for q in row] for row in self.entries])


def kron_expand(q: DesignMatrix, n: int) -> DesignMatrix:
    """Q (x) I_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not q.is_quaternion:
        return DesignMatrix(np.kron(q.entries, np.eye(n)))
    t, m = q.entries.shape
    out = np.empty((t * n, m * n), dtype=object)
    zero = Quaternion()
    for r, c in itertools.product(range(t * n), range(m * n)):
        out[r, c] = q.entries[r // n, c // n] if r % n == c % n else zero
    return DesignMatrix(out)


_CELL = re.compile(r"^\s*([+-]?)\s*(?:([sS])(\d+)(\*?)|0)\s*$")


def pattern_design(symbols: Sequence[complex], pattern: Sequence[Sequence[str]]) -> DesignMatrix:
    """Fill a sign/conjugation pattern grid with complex symbols.

    Cells look like ``"s1"``, ``"-s2*"`` or ``"0"``; symbol indices are
    1-based and ``*`` means complex conjugate.
    """
    rows = []
    for row in pattern:
        out = []
        for cell in row:
            m = _CELL.match(cell)
            if not m:
                raise ValueError(f"bad pattern cell {cell!r}")
            sign, _, idx, conj = m.groups()
            if idx is None:
                out.append(0j)
                continue
            v = complex(symbols[int(idx) - 1])
            if conj:
                v = v.conjugate()
            out.append(-v if sign == "-" else v)
        rows.append(out)
    if len({len(r) for r in rows}) != 1:
        raise ValueError("pattern rows have different lengths")
    return DesignMatrix(np.array(rows, dtype=complex))


ALAMOUTI_PATTERN = (("s1", "s2"), ("-s2*", "s1*"))


def alamouti_block(s1: complex, s2: complex) -> DesignMatrix:
    return pattern_design((s1, s2), ALAMOUTI_PATTERN)


def _column_gram_sq(c: DesignMatrix) -> np.ndarray:
    """|<c_a, c_b>|^2 for every ordered pair of design columns."""
    m = c.to_complex()
    gram = m.conj().T @ m
    if not c.is_quaternion:
        return np.abs(gram) ** 2
    # a quaternion inner product embeds as a 2x2 block U(q); |q|^2 = |U(q)|_F^2 / 2
    n = c.n_elements
    blocks = np.abs(gram.reshape(n, 2, n, 2)) ** 2
    return blocks.sum(axis=(1, 3)) / 2.0


def orthogonality_degree(c: DesignMatrix) -> float:
    """Mean of |<c_a, c_b>|^2 over ordered pairs of distinct columns."""
    m = c.n_elements
    if m < 2:
        raise TooFewColumns("orthogonality degree needs at least two columns")
    g = _column_gram_sq(c)
    off = g.sum() - np.trace(g)
    return float(off / (m * (m - 1)))


def quasi_orthogonality_deviation(c: DesignMatrix) -> float:
    """max |C^dagger C - I| entrywise (on the complex embedding)."""
    m = c.to_complex()
    gram = m.conj().T @ m
    return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))


def hamming(a: Sequence, b: Sequence) -> int:
    if len(a) != len(b):
        raise LengthMismatch(f"codeword lengths differ: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def min_distance(codewords: Sequence[Sequence]) -> int:
    """Minimum pairwise Hamming distance; duplicates give 0."""
    words = list(codewords)
    if len(words) < 2:
        raise TooFewCodewords("need at least two codewords")
    lengths = {len(w) for w in words}
    if len(lengths) != 1:
        raise LengthMismatch(f"codewords have differing lengths {sorted(lengths)}")
    return min(hamming(a, b) for a, b in itertools.combinations(words, 2))


def design_report(c: DesignMatrix) -> Mapping[str, float]:
    return {
        "orthogonality_degree": orthogonality_degree(c),
        "deviation": quasi_orthogonality_deviation(c),
    }
