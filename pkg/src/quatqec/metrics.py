"""Error-correction figures of merit.

``trace_distance`` is the true ``1/2 ||rho - sigma||_1``. The linear relation
``D = (1 - F) / 2`` used in the source tables is exposed separately as
``paper_df_relation`` and never substituted for it.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .cmat import StateVector, matrix_sqrt_psd, trace_norm, trace_norm_hermitian, validate_density
from .errors import DegenerateFit, DimensionMismatch, DomainError


def _check_probability(p: float, name: str) -> None:
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise DomainError(f"{name}={p!r} outside [0, 1]")


def detection_probability(p_e: float, n: int) -> float:
    """Probability that at least one of ``n`` qubits errs: 1 - (1 - p_e)^n."""
    _check_probability(p_e, "p_e")
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    return 1.0 - (1.0 - p_e) ** n


@dataclass(frozen=True)
class CorrectionCapabilityInput:
    n: int
    gamma: tuple[float, ...]
    gamma_total: float


def correction_capability(inp: CorrectionCapabilityInput) -> float:
    """1 - (1/N) * sum_k gamma_k / gamma_total, with the 1/N prefactor as printed."""
    if inp.gamma_total <= 0:
        raise DomainError("gamma_total must be positive")
    if inp.n < 1:
        raise DomainError("N must be >= 1")
    if any(g < 0 for g in inp.gamma):
        raise DomainError("error weights must be nonnegative")
    return 1.0 - sum(g / inp.gamma_total for g in inp.gamma) / inp.n


def _amps(s) -> np.ndarray:
    return s.amplitudes if isinstance(s, StateVector) else np.asarray(s, dtype=complex).ravel()


def fidelity_pure(psi, phi) -> float:
    a, b = _amps(psi), _amps(phi)
    if a.shape != b.shape:
        raise DimensionMismatch(f"states of dimension {a.size} and {b.size}")
    return float(abs(np.vdot(a, b)) ** 2)


def _pair(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    rho, sigma = validate_density(rho), validate_density(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"density matrices {rho.shape} and {sigma.shape}")
    return rho, sigma


def fidelity_density(rho, sigma) -> float:
    """||sqrt(rho) sqrt(sigma)||_1^2."""
    rho, sigma = _pair(rho, sigma)
    return trace_norm(matrix_sqrt_psd(rho) @ matrix_sqrt_psd(sigma)) ** 2


def trace_distance(rho, sigma) -> float:
    rho, sigma = _pair(rho, sigma)
    return 0.5 * trace_norm_hermitian(rho - sigma)


def paper_df_relation(f: float) -> float:
    """The table-side relation D = (1 - F) / 2."""
    _check_probability(f, "F")
    return 0.5 * (1.0 - f)


@dataclass(frozen=True)
class ComplexityModel:
    """time ~ c * N * log2(M)."""

    c: float
    r_squared: float

    def predict(self, n: int, m: int) -> float:
        return self.c * n * math.log2(m)


def fit_tcorr(samples: Sequence[tuple[int, int, float]]) -> ComplexityModel:
    """Least-squares fit of measured times to ``c * N * log2(M)`` through the origin."""
    if len(samples) < 2:
        raise DegenerateFit("need at least two (N, M, time) samples")
    if any(m < 2 for _, m, _ in samples):
        raise DegenerateFit("every sample needs M >= 2")
    x = np.array([n * math.log2(m) for n, m, _ in samples], dtype=float)
    y = np.array([t for _, _, t in samples], dtype=float)
    sxx = float(x @ x)
    if sxx == 0.0:
        raise DegenerateFit("all samples have N * log2(M) = 0")
    c = float(x @ y) / sxx
    ss_res = float(np.sum((y - c * x) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res == 0.0 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return ComplexityModel(c, r2)
