import functools
import itertools
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quatqec.pauli import PauliString, builtin_bitflip, builtin_shor, builtin_steane, load_code

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
CODES = ROOT / "codes"
SCENARIOS = ROOT / "scenarios"

_LETTER = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def letters_matrix(letters: str) -> np.ndarray:
    """Independent oracle: Kronecker product of letter matrices, qubit 0 leftmost."""
    return functools.reduce(np.kron, (_LETTER[c] for c in letters))


def pauli_strings(n: int):
    return st.text(alphabet="IXYZ", min_size=n, max_size=n)


@st.composite
def pauli_pair(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return draw(pauli_strings(n)), draw(pauli_strings(n))


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim, rank=None):
    rank = rank or dim
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture(scope="session")
def steane():
    return builtin_steane()


@pytest.fixture(scope="session")
def shor():
    return builtin_shor()


@pytest.fixture(scope="session")
def bitflip():
    return builtin_bitflip()


@pytest.fixture(scope="session")
def code_z(request):
    return lambda label: load_code(CODES / f"{label}.stab")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def weight_le(n: int, w: int):
    """Every Pauli string on n qubits of weight <= w, brute force."""
    out = [PauliString.identity(n)]
    for k in range(1, w + 1):
        for support in itertools.combinations(range(n), k):
            for letters in itertools.product("XYZ", repeat=k):
                out.append(PauliString.from_terms(n, zip(support, letters)))
    return out


# acceptance criteria append (number, passed, detail) here
ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {detail}")
