"""Quaternions, the quaternion group Q8, and their 2x2 complex realization.

The units are realized as ``u -> -i * sigma_u``::

    1 -> I,   i -> -i X,   j -> -i Y,   k -> -i Z

which satisfies i^2 = j^2 = k^2 = ijk = -1 exactly. Any realization differing
by a global phase gives the same observable results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ZeroQuaternion

ALGEBRA_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Quaternion:
    """q = w + x i + y j + z k with real components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for c in (self.w, self.x, self.y, self.z):
            if not math.isfinite(c):
                raise ValueError(f"non-finite quaternion component {c!r}")

    @classmethod
    def from_array(cls, a) -> Quaternion:
        w, x, y, z = (float(v) for v in a)
        return cls(w, x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return self + (-other)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return hamilton(self, other)
        s = float(other)
        return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)

    def __rmul__(self, other):
        return self * other

    def isclose(self, other: Quaternion, tol: float = ALGEBRA_TOL) -> bool:
        return bool(np.all(np.abs(self.as_array() - other.as_array()) <= tol))


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def hamilton(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p*q."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def conjugate(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def dot4(p: Quaternion, q: Quaternion) -> float:
    """Euclidean inner product of the coefficient 4-vectors, i.e. Re(conj(p) q)."""
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z


def norm(q: Quaternion) -> float:
    # hypot avoids underflow, so norm is 0 only for the zero quaternion
    return math.hypot(q.w, q.x, q.y, q.z)


def inverse(q: Quaternion) -> Quaternion:
    n = norm(q)
    if n == 0.0:
        raise ZeroQuaternion("zero quaternion has no inverse")
    return (conjugate(q) * (1.0 / n)) * (1.0 / n)


def quaternion_to_matrix(q: Quaternion) -> np.ndarray:
    """2x2 complex matrix w I + x (-iX) + y (-iY) + z (-iZ)."""
    return q.w * IDENTITY_2 - 1j * (q.x * SIGMA_X + q.y * SIGMA_Y + q.z * SIGMA_Z)


# ---------------------------------------------------------------------------
# Q8

Unit = Literal["1", "i", "j", "k"]
UNITS: tuple[str, ...] = ("1", "i", "j", "k")

# unit * unit -> (sign, unit)
_UNIT_TABLE: dict[tuple[str, str], tuple[int, str]] = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}

_UNIT_QUATERNION = {"1": ONE, "i": I, "j": J, "k": K}
_UNIT_MATRIX = {
    "1": IDENTITY_2,
    "i": -1j * SIGMA_X,
    "j": -1j * SIGMA_Y,
    "k": -1j * SIGMA_Z,
}


@dataclass(frozen=True)
class Q8Element:
    unit: str = "1"
    sign: int = 1

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ValueError(f"unknown Q8 unit {self.unit!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"Q8 sign must be +1 or -1, got {self.sign!r}")

    def __mul__(self, other: Q8Element) -> Q8Element:
        return q8_mul(self, other)

    def __str__(self) -> str:
        return ("" if self.sign == 1 else "-") + self.unit

    @classmethod
    def parse(cls, text: str) -> Q8Element:
        text = text.strip()
        sign = 1
        if text[:1] in "+-":
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        return cls(text, sign)

    def to_quaternion(self) -> Quaternion:
        return _UNIT_QUATERNION[self.unit] * self.sign


Q8: tuple[Q8Element, ...] = tuple(Q8Element(u, s) for s in (1, -1) for u in UNITS)


def q8_mul(a: Q8Element, b: Q8Element) -> Q8Element:
    s, u = _UNIT_TABLE[a.unit, b.unit]
    return Q8Element(u, s * a.sign * b.sign)


def q8_inv(a: Q8Element) -> Q8Element:
    # 1 and -1 are self-inverse; for the others u^-1 = -u
    if a.unit == "1":
        return a
    return Q8Element(a.unit, -a.sign)


def q8_to_unitary(a: Q8Element) -> np.ndarray:
    return a.sign * _UNIT_MATRIX[a.unit]
