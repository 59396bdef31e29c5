"""Pauli error models with counter-based, per-trial seeding.

Each trial gets its own Philox generator keyed by ``(run_seed, trial_index)``,
so a sample depends only on the model, the qubit count and that pair. Trials
can run in any order or in parallel without changing results.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import WeightTooLarge
from .pauli import LETTERS, PauliString

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ErrorModel:
    """``kind`` is ``"iid"`` (uses ``p_e``) or ``"fixed_weight"`` (uses ``weight``).

    ``ratios`` weights the letters X:Y:Z; the default is depolarizing-like.
    """

    kind: str = "iid"
    p_e: float = 0.0
    weight: int = 0
    ratios: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.kind not in ("iid", "fixed_weight"):
            raise ValueError(f"unknown error model kind {self.kind!r}")
        if not 0.0 <= self.p_e <= 1.0:
            raise ValueError(f"p_e={self.p_e} outside [0, 1]")
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")
        r = tuple(float(v) for v in self.ratios)
        if len(r) != 3 or min(r) < 0 or sum(r) <= 0:
            raise ValueError(f"letter ratios must be three nonnegative numbers with positive sum, got {self.ratios}")
        object.__setattr__(self, "ratios", r)

    @classmethod
    def iid(cls, p_e: float, ratios: Sequence[float] = (1, 1, 1)) -> ErrorModel:
        return cls("iid", p_e=p_e, ratios=tuple(ratios))

    @classmethod
    def fixed_weight(cls, weight: int, ratios: Sequence[float] = (1, 1, 1)) -> ErrorModel:
        return cls("fixed_weight", weight=weight, ratios=tuple(ratios))

    @classmethod
    def from_dict(cls, d: Mapping) -> ErrorModel:
        kind = d.get("kind", "iid")
        ratios = tuple(d.get("ratios", (1, 1, 1)))
        if kind == "iid":
            return cls.iid(float(d["p_e"]), ratios)
        return cls.fixed_weight(int(d["weight"]), ratios)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "ratios": list(self.ratios)}
        if self.kind == "iid":
            d["p_e"] = self.p_e
        else:
            d["weight"] = self.weight
        return d

    @property
    def letter_cdf(self) -> np.ndarray:
        r = np.asarray(self.ratios)
        return np.cumsum(r) / r.sum()


@dataclass(frozen=True)
class TrialSeed:
    run_seed: int
    trial_index: int

    def generator(self) -> np.random.Generator:
        key = np.array([self.run_seed & _MASK64, self.trial_index & _MASK64], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def _letters(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    # side="right" so a zero-ratio letter is never drawn
    return np.minimum(np.searchsorted(cdf, u, side="right"), 2)


def sample_error(model: ErrorModel, n: int, seed: TrialSeed) -> PauliString:
    rng = seed.generator()
    cdf = model.letter_cdf
    if model.kind == "iid":
        hit = rng.random(n) < model.p_e
        letters = _letters(cdf, rng.random(n))
        support = np.flatnonzero(hit)
        letters = letters[support]
    else:
        if model.weight > n:
            raise WeightTooLarge(f"weight {model.weight} exceeds {n} qubits")
        support = np.sort(rng.choice(n, size=model.weight, replace=False))
        letters = _letters(cdf, rng.random(model.weight))
    return PauliString.from_terms(n, ((int(q), LETTERS[int(l)]) for q, l in zip(support, letters)))
