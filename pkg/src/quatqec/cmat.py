"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays. The Hermitian eigensolver is a
cyclic Jacobi iteration so that trace norms, matrix square roots and fidelities
do not depend on a LAPACK call; ``numpy.linalg`` is used only in tests as an
independent cross-check.

State vectors order qubits big-endian: qubit 0 is the leftmost tensor factor,
i.e. the most significant bit of the basis index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPSD, TooLarge

HERMITIAN_TOL = 1e-8
JACOBI_OFF_TOL = 1e-12
PSD_CLAMP = 1e-9
NORM_DRIFT_TOL = 1e-10
MAX_DENSE_DIM = 256
MAX_STATE_QUBITS = 13

_drift_events = 0


def drift_events() -> int:
    """Number of times an operation had to renormalize a drifting state."""
    return _drift_events


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = as_matrix(h)
    return h.shape[0] == h.shape[1] and bool(np.max(np.abs(h - h.conj().T), initial=0.0) <= tol)


def _check_hermitian(h) -> np.ndarray:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {h.shape}")
    if h.shape[0] > MAX_DENSE_DIM:
        raise TooLarge(f"dimension {h.shape[0]} exceeds dense cap {MAX_DENSE_DIM}")
    if not is_hermitian(h):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return h


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigh(h, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ascending eigenvalues and the unitary whose columns are the
    matching eigenvectors. Converges when the off-diagonal Frobenius mass
    drops below ``JACOBI_OFF_TOL`` (relative to the matrix norm when that
    exceeds one).
    """
    return _jacobi(_check_hermitian(h), max_sweeps)


def _jacobi(h: np.ndarray, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    a = 0.5 * (h + h.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    tol = JACOBI_OFF_TOL * max(1.0, float(np.linalg.norm(a)))

    for _ in range(max_sweeps):
        if _off_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # diag(1, conj(phase)) makes the pivot real, then a real rotation zeroes it
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ u
    else:
        if _off_norm(a) >= tol:
            raise RuntimeError("Jacobi iteration did not converge")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(h) -> np.ndarray:
    return hermitian_eigh(h)[0]


def trace_norm_hermitian(h) -> float:
    return float(np.sum(np.abs(hermitian_eigenvalues(h))))


def matrix_sqrt_psd(a) -> np.ndarray:
    w, v = hermitian_eigh(a)
    if w[0] < -PSD_CLAMP:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is negative")
    # eigenvalues below the solver's resolution are zero; their square roots would not be
    floor = w.size * np.finfo(float).eps * max(1.0, float(np.abs(w).max(initial=0.0)))
    w = np.where(w <= floor, 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def trace_norm(a) -> float:
    """Sum of singular values of a square matrix.

    Uses the Hermitian dilation [[0, A], [A^dagger, 0]], whose eigenvalues are
    plus and minus the singular values, so no square roots of small
    eigenvalues are taken.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {a.shape}")
    if a.shape[0] > MAX_DENSE_DIM:
        raise TooLarge(f"dimension {a.shape[0]} exceeds dense cap {MAX_DENSE_DIM}")
    n = a.shape[0]
    dil = np.zeros((2 * n, 2 * n), dtype=complex)
    dil[:n, n:] = a
    dil[n:, :n] = a.conj().T
    return 0.5 * float(np.sum(np.abs(_jacobi(dil)[0])))


# ---------------------------------------------------------------------------
# states


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state on ``n_qubits`` qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        n = amps.size.bit_length() - 1
        if amps.size == 0 or 1 << n != amps.size:
            raise DimensionMismatch(f"state length {amps.size} is not a power of two")
        if n > MAX_STATE_QUBITS:
            raise TooLarge(f"{n} qubits exceeds statevector cap {MAX_STATE_QUBITS}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("state has non-finite amplitudes")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_DRIFT_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def from_amplitudes(cls, amps) -> StateVector:
        """Normalize arbitrary nonzero amplitudes into a state."""
        amps = np.asarray(amps, dtype=complex).ravel()
        nrm = float(np.linalg.norm(amps))
        if nrm == 0.0:
            raise ValueError("zero vector cannot be normalized")
        return cls(amps / nrm)

    @classmethod
    def basis(cls, n_qubits: int, index: int = 0) -> StateVector:
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def random(cls, n_qubits: int, rng: np.random.Generator) -> StateVector:
        d = 1 << n_qubits
        return cls.from_amplitudes(rng.normal(size=d) + 1j * rng.normal(size=d))

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def renormalize(amps: np.ndarray) -> StateVector:
    """Wrap the output of a norm-preserving operation, repairing float drift.

    Drift beyond ``NORM_DRIFT_TOL`` is repaired and counted in
    ``drift_events()``.
    """
    global _drift_events
    amps = np.asarray(amps, dtype=complex)
    norm2 = float(np.vdot(amps, amps).real)
    if abs(norm2 - 1.0) > NORM_DRIFT_TOL:
        if norm2 == 0.0:
            raise ValueError("operation annihilated the state")
        _drift_events += 1
        amps = amps / math.sqrt(norm2)
    return StateVector(amps)


def apply_single_qubit(matrix, amps: np.ndarray, qubit: int) -> np.ndarray:
    """Apply a 2x2 matrix to one qubit of a raw amplitude vector."""
    amps = np.asarray(amps, dtype=complex)
    n = amps.size.bit_length() - 1
    psi = amps.reshape(1 << qubit, 2, 1 << (n - qubit - 1))
    return np.einsum("ab,xby->xay", np.asarray(matrix, dtype=complex), psi).ravel()


def validate_density(rho, tol: float = NORM_DRIFT_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the matrix."""
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got {rho.shape}")
    if not is_hermitian(rho, tol):
        raise NotHermitian("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace {tr!r} != 1")
    if hermitian_eigenvalues(rho)[0] < -PSD_CLAMP:
        raise NotPSD("density matrix has a negative eigenvalue")
    return rho
