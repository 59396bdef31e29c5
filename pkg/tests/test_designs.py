import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatqec.designs import (
    DesignMatrix,
    alamouti_block,
    design_report,
    kron_expand,
    min_distance,
    orthogonality_degree,
    pattern_design,
    quasi_orthogonality_deviation,
)
from quatqec.errors import LengthMismatch, TooFewCodewords, TooFewColumns
from quatqec.quat import I, J, K, ONE, Quaternion

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def D(a):
    return DesignMatrix(np.asarray(a, dtype=complex))


def oracle_degree(m):
    # explicit double loop over distinct ordered column pairs
    cols = [m[:, a] for a in range(m.shape[1])]
    vals = [abs(np.vdot(cols[a], cols[b])) ** 2 for a in range(len(cols)) for b in range(len(cols)) if a != b]
    return sum(vals) / len(vals)


def test_kron_examples():
    assert np.array_equal(kron_expand(D(np.eye(2)), 2).entries, np.eye(4))
    q = D([[1, 2], [3, 4]])
    e = kron_expand(q, 3).entries
    assert e.shape == (6, 6)
    for a in range(2):
        for b in range(2):
            assert np.array_equal(e[3 * a : 3 * a + 3, 3 * b : 3 * b + 3], q.entries[a, b] * np.eye(3))
    c = alamouti_block(1, 0)
    assert np.array_equal(kron_expand(c, 1).entries, c.entries)


def test_alamouti_examples():
    assert np.array_equal(alamouti_block(1, 0).entries, np.eye(2))
    assert np.array_equal(alamouti_block(1, 1j).entries, [[1, 1j], [1j, 1]])


@given(complexes, complexes)
def test_alamouti_gram(s1, s2):
    c = alamouti_block(s1, s2).entries
    assert np.allclose(c.conj().T @ c, (abs(s1) ** 2 + abs(s2) ** 2) * np.eye(2), atol=1e-9)


def test_orthogonality_examples():
    assert orthogonality_degree(D(np.eye(4))) == 0
    assert orthogonality_degree(alamouti_block(1, 0)) == 0
    assert orthogonality_degree(D([[1, 1], [0, 0]])) == 1
    with pytest.raises(TooFewColumns):
        orthogonality_degree(D([[1], [2]]))


def test_deviation_examples():
    assert quasi_orthogonality_deviation(D(np.eye(3))) == 0
    assert quasi_orthogonality_deviation(alamouti_block(1, 0)) == 0
    assert quasi_orthogonality_deviation(D(2 * np.eye(2))) == 3


def test_min_distance_examples():
    assert min_distance(["000", "111"]) == 3
    assert min_distance(["00", "01", "11"]) == 1
    assert min_distance(["A", "A"]) == 0
    with pytest.raises(TooFewCodewords):
        min_distance(["01"])
    with pytest.raises(LengthMismatch):
        min_distance(["01", "011"])


@given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.integers(1, 5))
def test_degree_matches_oracle(seed, m, t):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(t, m)) + 1j * rng.normal(size=(t, m))
    assert orthogonality_degree(D(a)) == pytest.approx(oracle_degree(a), rel=1e-12, abs=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.floats(0, 2 * np.pi))
def test_degree_invariances(seed, m, theta):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(3, m)) + 1j * rng.normal(size=(3, m))
    base = orthogonality_degree(D(a))
    perm = rng.permutation(m)
    assert orthogonality_degree(D(a[:, perm])) == pytest.approx(base, rel=1e-12)
    assert orthogonality_degree(D(np.exp(1j * theta) * a)) == pytest.approx(base, rel=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 4))
def test_kron_preserves_deviation(seed, m, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    assert abs(quasi_orthogonality_deviation(kron_expand(D(a), n)) - quasi_orthogonality_deviation(D(a))) < 1e-12


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_orthonormal_columns_agree(seed, m):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m)))
    r = design_report(D(q))
    assert r["orthogonality_degree"] < 1e-12
    assert r["deviation"] < 1e-12


def test_pattern_builder():
    c = pattern_design((1 + 1j, 2, 3j), [["s1", "-s2*", "0"], ["s3*", "s1", "-s2"]])
    assert np.array_equal(c.entries, [[1 + 1j, -2, 0], [-3j, 1 + 1j, -2]])
    with pytest.raises(ValueError):
        pattern_design((1,), [["t1"]])
    with pytest.raises(ValueError):
        pattern_design((1,), [["s1"], ["s1", "s1"]])


def test_quaternion_design():
    c = DesignMatrix(np.array([[ONE, I], [J, K]], dtype=object))
    assert c.is_quaternion
    assert c.to_complex().shape == (4, 4)
    # columns (1, j) and (i, k): <c1, c2> = conj(1) i + conj(j) k = i - jk = i - i = 0
    assert orthogonality_degree(c) == pytest.approx(0.0, abs=1e-15)
    c2 = DesignMatrix(np.array([[ONE, ONE], [Quaternion(), Quaternion()]], dtype=object))
    assert orthogonality_degree(c2) == pytest.approx(1.0)
    expanded = kron_expand(c, 2)
    assert expanded.entries.shape == (4, 4)
    assert quasi_orthogonality_deviation(expanded) == pytest.approx(quasi_orthogonality_deviation(c))


def test_design_validation():
    with pytest.raises(ValueError):
        DesignMatrix(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        D([[np.nan]])
    with pytest.raises(TypeError):
        DesignMatrix(np.array([[ONE, 1]], dtype=object))
