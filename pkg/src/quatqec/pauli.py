"""Binary-symplectic Pauli strings and stabilizer codes.

A Pauli string on ``n`` qubits is ``i**phase * P_0 (x) P_1 (x) ... (x) P_{n-1}``
with each ``P_q`` in {I, X, Y, Z}. Bit ``q`` of the integers ``x`` and ``z``
describes qubit ``q`` (I: 00, X: 10, Z: 01, Y: 11), so string position and
bit position agree. Symplectic vectors are packed as ``x | z << n``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BadCharacter,
    CommutationViolation,
    DependentGenerators,
    EmptyString,
    LengthMismatch,
    LogicalViolation,
    ParseError,
    WrongCount,
)
from .quat import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z

LETTERS = "XYZ"
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}
_LETTER_MATRIX = {"I": IDENTITY_2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True, slots=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Pauli string needs at least one qubit")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError("bit vectors wider than the qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliString:
        bx, bz = _LETTER_BITS[letter]
        return cls(n, bx << qubit, bz << qubit)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[int, str]]) -> PauliString:
        """Hermitian string from ``(qubit, letter)`` pairs on distinct qubits."""
        x = z = 0
        for q, letter in terms:
            bx, bz = _LETTER_BITS[letter]
            x |= bx << q
            z |= bz << q
        return cls(n, x, z)

    @classmethod
    def from_vector(cls, n: int, v: int) -> PauliString:
        mask = (1 << n) - 1
        return cls(n, v & mask, v >> n)

    @property
    def vector(self) -> int:
        return self.x | (self.z << self.n)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def letter(self, q: int) -> str:
        return _BITS_LETTER[(self.x >> q) & 1, (self.z >> q) & 1]

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    def support(self) -> tuple[int, ...]:
        s = self.x | self.z
        return tuple(q for q in range(self.n) if (s >> q) & 1)

    def terms(self) -> tuple[tuple[int, str], ...]:
        return tuple((q, self.letter(q)) for q in self.support())

    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def hermitian(self) -> PauliString:
        """Same letters with the phase dropped."""
        return PauliString(self.n, self.x, self.z)

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __str__(self) -> str:
        prefix = "" if self.phase == 0 else _PHASE_PREFIX[self.phase]
        return prefix + self.letters()

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"


def parse_pauli(text: str) -> PauliString:
    text = text.strip()
    if not text:
        raise EmptyString("empty Pauli string")
    x = z = 0
    for q, c in enumerate(text):
        if c not in _LETTER_BITS:
            raise BadCharacter(f"invalid Pauli letter {c!r} at position {q}")
        bx, bz = _LETTER_BITS[c]
        x |= bx << q
        z |= bz << q
    return PauliString(len(text), x, z)


def _check_lengths(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise LengthMismatch(f"Pauli strings on {p.n} and {q.n} qubits")


def symplectic(u: int, v: int, n: int) -> int:
    """Symplectic product of two packed vectors (0 = commute)."""
    mask = (1 << n) - 1
    return _popcount(((u & mask) & (v >> n)) ^ ((u >> n) & (v & mask))) & 1


def commutes(p: PauliString, q: PauliString) -> bool:
    _check_lengths(p, q)
    return _popcount((p.x & q.z) ^ (p.z & q.x)) % 2 == 0


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact product p*q including the power of i."""
    _check_lengths(p, q)
    # write each as i^(x.z) X^x Z^z; moving Z^z1 past X^x2 costs (-1)^(z1.x2)
    x = p.x ^ q.x
    z = p.z ^ q.z
    phase = (
        p.phase
        + q.phase
        + _popcount(p.x & p.z)
        + _popcount(q.x & q.z)
        + 2 * _popcount(p.z & q.x)
        - _popcount(x & z)
    )
    return PauliString(p.n, x, z, phase)


def weight(p: PauliString) -> int:
    return p.weight()


def to_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix; qubit 0 is the leftmost Kronecker factor."""
    m = np.array([[1.0 + 0j]])
    for q in range(p.n):
        m = np.kron(m, _LETTER_MATRIX[p.letter(q)])
    return (1j**p.phase) * m


def _index_mask(bits: int, n: int) -> int:
    # qubit q lives in bit (n-1-q) of the statevector index
    return sum(1 << (n - 1 - q) for q in range(n) if (bits >> q) & 1)


def apply_pauli(p: PauliString, amps: np.ndarray) -> np.ndarray:
    """Apply ``p`` to a raw amplitude vector without building its matrix."""
    amps = np.asarray(amps, dtype=complex)
    dim = amps.size
    if dim != 1 << p.n:
        raise LengthMismatch(f"state of dimension {dim} for a {p.n}-qubit Pauli")
    xm = _index_mask(p.x, p.n)
    zm = _index_mask(p.z, p.n)
    idx = np.arange(dim, dtype=np.int64)
    sign = 1 - 2 * (np.bitwise_count(idx & zm).astype(np.int64) & 1)
    coef = 1j ** ((p.phase + _popcount(p.x & p.z)) % 4)
    out = np.empty_like(amps)
    out[idx ^ xm] = coef * sign * amps
    return out


# ---------------------------------------------------------------------------
# GF(2) linear algebra on packed integer rows


def echelon(rows: Iterable[int]) -> list[int]:
    """Reduced basis with distinct leading bits; drops dependent rows."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis = [min(b, b ^ r) for b in basis]
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def gf2_rank(rows: Iterable[int]) -> int:
    return len(echelon(rows))


def reduce(v: int, basis: Sequence[int]) -> int:
    """Remainder of ``v`` after elimination against an ``echelon`` basis."""
    for b in basis:
        v = min(v, v ^ b)
    return v


def in_span(v: int, basis: Sequence[int]) -> bool:
    return reduce(v, basis) == 0


def nullspace(rows: Sequence[int], width: int) -> list[int]:
    """Basis of {v : popcount(v & r) even for every r} in GF(2)^width."""
    pivots: dict[int, int] = {}
    for r in rows:
        for col, pr in pivots.items():
            if (r >> col) & 1:
                r ^= pr
        if not r:
            continue
        col = r.bit_length() - 1
        for c2 in list(pivots):
            if (pivots[c2] >> col) & 1:
                pivots[c2] ^= r
        pivots[col] = r
    out = []
    for f in range(width):
        if f in pivots:
            continue
        v = 1 << f
        for col, pr in pivots.items():
            if (pr >> f) & 1:
                v |= 1 << col
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# stabilizer codes


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    k: int
    d_claimed: int
    generators: tuple[PauliString, ...]
    logical_x: tuple[PauliString, ...] = ()
    logical_z: tuple[PauliString, ...] = ()
    name: str = field(default="", compare=False)

    @property
    def label(self) -> str:
        return self.name or f"[[{self.n},{self.k},{self.d_claimed}]]"

    @property
    def has_logicals(self) -> bool:
        return len(self.logical_x) == self.k and len(self.logical_z) == self.k

    @property
    def t_correct(self) -> int:
        return (self.d_claimed - 1) // 2

    def stabilizer_basis(self) -> list[int]:
        return echelon(g.vector for g in self.generators)


@dataclass(frozen=True)
class GeneratorReport:
    ok: bool
    violation: str = ""
    message: str = "pass"

    def __str__(self) -> str:
        return "pass" if self.ok else f"FAIL {self.violation}: {self.message}"


def _violations(code: StabilizerCode):
    """Yield the first violated invariant as an exception instance."""
    n, k = code.n, code.k
    if not 0 <= k <= n:
        return WrongCount(f"k={k} outside 0..n={n}")
    gens = code.generators
    if len(gens) != n - k:
        return WrongCount(f"expected {n - k} generators, got {len(gens)}")
    for i, g in enumerate(gens):
        if g.n != n:
            return LengthMismatch(f"generator {i} acts on {g.n} qubits, code has {n}")
        if not g.is_hermitian:
            return ParseError(0, f"generator {i} has an imaginary phase")
    for i, j in itertools.combinations(range(len(gens)), 2):
        if not commutes(gens[i], gens[j]):
            return CommutationViolation(i, j)
    if gf2_rank(g.vector for g in gens) != len(gens):
        return DependentGenerators("generators are linearly dependent over GF(2)")
    lx, lz = code.logical_x, code.logical_z
    if not lx and not lz:
        return None
    if len(lx) != k or len(lz) != k:
        return WrongCount(f"expected {k} LX and {k} LZ lines, got {len(lx)} and {len(lz)}")
    logicals = list(lx) + list(lz)
    for i, op in enumerate(logicals):
        if op.n != n:
            return LengthMismatch(f"logical {i} acts on {op.n} qubits")
        for j, g in enumerate(gens):
            if not commutes(op, g):
                return LogicalViolation(f"logical {i} anticommutes with generator {j}")
    for a in range(k):
        for b in range(k):
            want = a != b
            if commutes(lx[a], lz[b]) != want:
                rel = "commute" if want else "anticommute"
                return LogicalViolation(f"LX{a} and LZ{b} must {rel}")
            if a < b and not (commutes(lx[a], lx[b]) and commutes(lz[a], lz[b])):
                return LogicalViolation(f"logicals {a} and {b} of the same type anticommute")
    return None


def check_generators(code: StabilizerCode) -> GeneratorReport:
    v = _violations(code)
    if v is None:
        return GeneratorReport(True)
    return GeneratorReport(False, type(v).__name__, str(v))


def validate(code: StabilizerCode) -> StabilizerCode:
    v = _violations(code)
    if v is not None:
        raise v
    return code


def find_logicals(n: int, generators: Sequence[PauliString]) -> tuple[list[PauliString], list[PauliString]]:
    """Logical X/Z pairs completing a commuting, independent generator set.

    Extends the stabilizer to its normalizer and pairs the extra vectors by
    symplectic Gram-Schmidt.
    """
    mask = (1 << n) - 1
    swapped = [(g.vector >> n) | ((g.vector & mask) << n) for g in generators]
    normalizer = nullspace(swapped, 2 * n)
    basis = echelon(g.vector for g in generators)
    extra = []
    for v in normalizer:
        r = reduce(v, basis)
        if r:
            extra.append(v)
            basis = echelon(basis + [r])
    lx, lz = [], []
    while extra:
        a = extra.pop(0)
        partner = next((i for i, b in enumerate(extra) if symplectic(a, b, n)), None)
        if partner is None:
            raise DependentGenerators("normalizer complement is degenerate")
        b = extra.pop(partner)
        extra = [
            v ^ (b if symplectic(v, a, n) else 0) ^ (a if symplectic(v, b, n) else 0) for v in extra
        ]
        lx.append(PauliString.from_vector(n, a))
        lz.append(PauliString.from_vector(n, b))
    return lx, lz


# ---------------------------------------------------------------------------
# code files


def parse_code_file(text: str, validate_code: bool = True, name: str = "") -> StabilizerCode:
    """Parse the line-oriented ``.stab`` format.

    ::

        # comment
        n=7 k=1 d=3
        IIIXXXX        <- n-k generator lines
        ...
        LX XXXXXXX     <- optional, k lines each
        LZ ZZZZZZZ
    """
    header = None
    gens: list[PauliString] = []
    lx: list[PauliString] = []
    lz: list[PauliString] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            try:
                fields = dict(tok.split("=", 1) for tok in line.split())
                header = tuple(int(fields.pop(key)) for key in ("n", "k", "d"))
            except (ValueError, KeyError):
                raise ParseError(lineno, f"expected header 'n=<int> k=<int> d=<int>', got {line!r}")
            if fields:
                raise ParseError(lineno, f"unexpected header fields {sorted(fields)}")
            n, k, _ = header
            if n < 1 or not 0 <= k <= n:
                raise ParseError(lineno, f"invalid parameters n={n} k={k}")
            continue
        n, k, _ = header
        tokens = line.split()
        if tokens[0] in ("LX", "LZ"):
            if len(tokens) != 2:
                raise ParseError(lineno, "logical lines look like 'LX <string>'")
            target = lx if tokens[0] == "LX" else lz
            if tokens[0] == "LX" and lz:
                raise ParseError(lineno, "LX lines must precede LZ lines")
            if len(gens) != n - k:
                raise ParseError(lineno, f"expected {n - k} generators before logicals, got {len(gens)}")
            body = tokens[1]
        else:
            if len(tokens) != 1:
                raise ParseError(lineno, f"trailing characters after generator: {line!r}")
            if lx or lz:
                raise ParseError(lineno, "generator after logical operators")
            if len(gens) == n - k:
                raise ParseError(lineno, f"too many generators (expected {n - k})")
            target = gens
            body = tokens[0]
        if len(body) != n:
            raise ParseError(lineno, f"string has length {len(body)}, expected {n}")
        try:
            target.append(parse_pauli(body))
        except (BadCharacter, EmptyString) as exc:
            raise ParseError(lineno, str(exc)) from None
        if len(lx) > k or len(lz) > k:
            raise ParseError(lineno, f"more than k={k} logical lines")
    if header is None:
        raise ParseError(0, "missing header line")
    n, k, d = header
    if len(gens) != n - k:
        raise ParseError(0, f"expected {n - k} generators, got {len(gens)}")
    code = StabilizerCode(n, k, d, tuple(gens), tuple(lx), tuple(lz), name=name)
    return validate(code) if validate_code else code


def load_code(path: str | Path, validate_code: bool = True) -> StabilizerCode:
    path = Path(path)
    return parse_code_file(path.read_text(), validate_code, name=path.stem)


def format_code_file(code: StabilizerCode, comment: str = "") -> str:
    lines = [f"# {c}" for c in comment.splitlines()]
    lines.append(f"n={code.n} k={code.k} d={code.d_claimed}")
    lines += [g.letters() for g in code.generators]
    lines += [f"LX {p.letters()}" for p in code.logical_x]
    lines += [f"LZ {p.letters()}" for p in code.logical_z]
    return "\n".join(lines) + "\n"


def _code(n, k, d, gens, lx, lz, name) -> StabilizerCode:
    return validate(
        StabilizerCode(
            n,
            k,
            d,
            tuple(map(parse_pauli, gens)),
            tuple(map(parse_pauli, lx)),
            tuple(map(parse_pauli, lz)),
            name=name,
        )
    )


def builtin_steane() -> StabilizerCode:
    rows = ("IIIXXXX", "IXXIIXX", "XIXIXIX")
    gens = rows + tuple(r.replace("X", "Z") for r in rows)
    return _code(7, 1, 3, gens, ["XXXXXXX"], ["ZZZZZZZ"], "steane")


def builtin_shor() -> StabilizerCode:
    gens = (
        "ZZIIIIIII",
        "IZZIIIIII",
        "IIIZZIIII",
        "IIIIZZIII",
        "IIIIIIZZI",
        "IIIIIIIZZ",
        "XXXXXXIII",
        "IIIXXXXXX",
    )
    # |0_L> = (|000>+|111>)^3 is the +1 eigenstate of X^9
    return _code(9, 1, 3, gens, ["ZZZZZZZZZ"], ["XXXXXXXXX"], "shor")


def builtin_bitflip() -> StabilizerCode:
    """Three-qubit repetition code; distance 1 against phase flips."""
    return _code(3, 1, 1, ("ZZI", "IZZ"), ["XXX"], ["ZII"], "bitflip")


BUILTIN_CODES = {
    "steane": builtin_steane,
    "shor": builtin_shor,
    "bitflip": builtin_bitflip,
}


def resolve_code(spec: str | Path, validate_code: bool = True) -> StabilizerCode:
    """``builtin:<name>`` or a path to a ``.stab`` file."""
    s = str(spec)
    if s.startswith("builtin:"):
        key = s.split(":", 1)[1]
        if key not in BUILTIN_CODES:
            raise ValueError(f"unknown builtin code {key!r}; choose from {sorted(BUILTIN_CODES)}")
        return BUILTIN_CODES[key]()
    return load_code(s, validate_code)
