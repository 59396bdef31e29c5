"""Quaternion-coded correction: Q8 error operators, weighted quaternion
encoding/decoding and inverse-element correction.

All quaternions act on a single target qubit through ``quaternion_to_matrix``
(``u -> -i sigma_u``). Fidelities elsewhere are phase-insensitive, so the
global phases this introduces are immaterial.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .cmat import StateVector, apply_single_qubit, renormalize
from .errors import QubitOutOfRange, SingularCodec, ZeroOperator
from .pauli import PauliString
from .quat import UNITS, Q8Element, Quaternion, norm, q8_inv, q8_to_unitary, quaternion_to_matrix

CODEC_TOL = 1e-9
_SINGULAR_DET = 1e-12

# per-qubit Pauli letters seen by the stabilizer decoder, as Q8 units
LETTER_TO_Q8 = {"X": Q8Element("i"), "Y": Q8Element("j"), "Z": Q8Element("k")}


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.n_qubits:
        raise QubitOutOfRange(f"qubit {qubit} outside 0..{state.n_qubits - 1}")


@dataclass(frozen=True)
class QuaternionErrorOp:
    """sum_u e_u U(u) over the units {1, i, j, k} with complex coefficients."""

    coeffs: Mapping[str, complex]

    def __post_init__(self):
        bad = set(self.coeffs) - set(UNITS)
        if bad:
            raise ValueError(f"unknown quaternion units {sorted(bad)}")
        if not any(abs(v) > 0 for v in self.coeffs.values()):
            raise ZeroOperator("error operator has no nonzero coefficient")

    @classmethod
    def element(cls, g: Q8Element) -> QuaternionErrorOp:
        return cls({g.unit: complex(g.sign)})

    def matrix(self) -> np.ndarray:
        return sum(complex(c) * q8_to_unitary(Q8Element(u)) for u, c in self.coeffs.items())

    def unitarity_deviation(self) -> float:
        m = self.matrix()
        return float(np.max(np.abs(m.conj().T @ m - np.eye(2))))


def apply_error_operator(op: QuaternionErrorOp, state: StateVector, qubit: int) -> tuple[StateVector, float]:
    """Apply the operator to one qubit; returns the renormalized state and the norm before renormalizing."""
    _check_qubit(state, qubit)
    out = apply_single_qubit(op.matrix(), state.amplitudes, qubit)
    nrm = float(np.linalg.norm(out))
    if nrm == 0.0:
        raise ZeroOperator("error operator annihilates the state")
    return StateVector(out / nrm), nrm


def apply_q8(state: StateVector, g: Q8Element, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    return renormalize(apply_single_qubit(q8_to_unitary(g), state.amplitudes, qubit))


def qostbc_correct(state: StateVector, detected: Q8Element, qubit: int) -> StateVector:
    """Undo a detected Q8 error by applying its group inverse."""
    return apply_q8(state, q8_inv(detected), qubit)


def q8_corrections(correction: PauliString) -> list[tuple[int, Q8Element]]:
    """Per-qubit Q8 elements read off a stabilizer-decoder correction."""
    return [(q, LETTER_TO_Q8[letter]) for q, letter in correction.terms()]


def correct_with_q8(state: StateVector, correction: PauliString) -> StateVector:
    for q, g in q8_corrections(correction):
        state = qostbc_correct(state, g, q)
    return state


def general_correction_matrix(beta: Mapping[str, complex], error: QuaternionErrorOp) -> np.ndarray:
    """sum_q beta_q U(q)^-1 (sum_p e_p U(p)), for analysis only."""
    inv = sum(complex(b) * q8_to_unitary(q8_inv(Q8Element(u))) for u, b in beta.items())
    return inv @ error.matrix()


# ---------------------------------------------------------------------------
# weighted quaternion encoding


def weighted_sum(quaternions: Sequence[Quaternion], weights: Sequence[complex], adjoint: bool = False) -> np.ndarray:
    mats = [quaternion_to_matrix(q) for q in quaternions]
    if adjoint:
        mats = [m.conj().T for m in mats]
    return sum(complex(w) * m for w, m in zip(weights, mats))


def solve_gamma(quaternions: Sequence[Quaternion], beta: Sequence[complex]) -> tuple[np.ndarray, float]:
    """Decoding weights minimizing ||sum_m gamma_m U(q_m)^dagger A - I||_F.

    ``A = sum_m beta_m U(q_m)``. Returns ``(gamma, residual)``.
    """
    if len(quaternions) != len(beta) or not quaternions:
        raise ValueError("need one encoding weight per quaternion")
    a = weighted_sum(quaternions, beta)
    if abs(np.linalg.det(a)) < _SINGULAR_DET:
        raise SingularCodec("encoding operator is singular")
    cols = [(quaternion_to_matrix(q).conj().T @ a).ravel() for q in quaternions]
    system = np.stack(cols, axis=1)
    target = np.eye(2, dtype=complex).ravel()
    gamma, *_ = np.linalg.lstsq(system, target, rcond=None)
    residual = float(np.linalg.norm(system @ gamma - target))
    return gamma, residual


@dataclass(frozen=True, eq=False)
class QodCodec:
    quaternions: tuple[Quaternion, ...]
    beta: tuple[complex, ...]
    gamma: tuple[complex, ...]

    def encoder(self) -> np.ndarray:
        return weighted_sum(self.quaternions, self.beta)

    def decoder(self) -> np.ndarray:
        return weighted_sum(self.quaternions, self.gamma, adjoint=True)

    def round_trip_error(self) -> float:
        return float(np.max(np.abs(self.decoder() @ self.encoder() - np.eye(2))))


def make_codec(quaternions: Sequence[Quaternion], beta: Sequence[complex]) -> QodCodec:
    qs = tuple(quaternions)
    for q in qs:
        if abs(norm(q) - 1.0) > CODEC_TOL:
            raise ValueError(f"codec quaternions must be unit norm, got |q| = {norm(q)}")
    gamma, residual = solve_gamma(qs, beta)
    if residual > CODEC_TOL:
        raise SingularCodec(f"no decoding weights invert the encoder (residual {residual:.2e})")
    return QodCodec(qs, tuple(complex(b) for b in beta), tuple(complex(g) for g in gamma))


def encode_qod(codec: QodCodec, state: StateVector, qubit: int = 0) -> StateVector:
    _check_qubit(state, qubit)
    a = codec.encoder()
    if abs(np.linalg.det(a)) < _SINGULAR_DET:
        raise SingularCodec("encoding operator is singular")
    return StateVector.from_amplitudes(apply_single_qubit(a, state.amplitudes, qubit))


def decode_qod(codec: QodCodec, state: StateVector, qubit: int = 0) -> StateVector:
    _check_qubit(state, qubit)
    return StateVector.from_amplitudes(apply_single_qubit(codec.decoder(), state.amplitudes, qubit))
