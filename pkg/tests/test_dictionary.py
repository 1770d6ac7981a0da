import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import hadamard

from ompbounds import Dictionary, build_identity_hadamard, fwht

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def test_build_m2_columns():
    d = build_identity_hadamard(2)
    cols = np.column_stack([d.column(j) for j in range(4)])
    expected = np.array(
        [[1.0, 0.0, INV_SQRT2, INV_SQRT2], [0.0, 1.0, INV_SQRT2, -INV_SQRT2]]
    )
    np.testing.assert_allclose(cols, expected, rtol=0, atol=1e-15)
    assert d.m == 2 and d.n == 4


@pytest.mark.parametrize("bad", [0, 1, 3, 6, -4, 2.0, "8"])
def test_build_rejects_bad_m(bad):
    with pytest.raises(ValueError):
        build_identity_hadamard(bad)


@pytest.mark.parametrize("m", [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096])
def test_coherence_closed_form(m):
    d = build_identity_hadamard(m)
    assert abs(d.mutual_coherence() - 1.0 / math.sqrt(m)) < 1e-12


@pytest.mark.parametrize("m", [2, 4, 8, 16, 32, 64])
def test_coherence_brute_force_agrees(m):
    d = build_identity_hadamard(m)
    assert d.mutual_coherence("brute") == pytest.approx(d.mutual_coherence(), abs=1e-14)


def test_coherence_orthonormal_is_zero():
    d = Dictionary.from_matrix(np.eye(5))
    assert d.mutual_coherence() == 0.0


def test_coherence_duplicate_column_is_one():
    a = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    assert Dictionary.from_matrix(a).mutual_coherence() == pytest.approx(1.0, abs=1e-15)


def test_coherence_needs_two_columns():
    d = Dictionary.from_matrix(np.ones((3, 1)))
    with pytest.raises(ValueError):
        d.mutual_coherence()


def test_coherence_cache_idempotent():
    g = np.random.default_rng(3).normal(size=(6, 9))
    d = Dictionary.from_matrix(g)
    assert d.mutual_coherence() == d.mutual_coherence()


def test_column_identity_block():
    d = build_identity_hadamard(4)
    np.testing.assert_array_equal(d.column(1), [0.0, 1.0, 0.0, 0.0])


def test_column_first_hadamard():
    d = build_identity_hadamard(4)
    np.testing.assert_allclose(d.column(4), [0.5, 0.5, 0.5, 0.5], rtol=0, atol=0)


def test_column_matches_dense_sylvester():
    d = build_identity_hadamard(8)
    expected = hadamard(8)[:, 4] / math.sqrt(8.0)
    np.testing.assert_allclose(d.column(12), expected, rtol=0, atol=1e-15)


@pytest.mark.parametrize("j", [-1, 16])
def test_column_out_of_range(j):
    with pytest.raises(ValueError):
        build_identity_hadamard(8).column(j)


@pytest.mark.parametrize("m", [2, 8, 64])
def test_columns_unit_norm(m):
    d = build_identity_hadamard(m)
    for j in range(d.n):
        assert abs(np.linalg.norm(d.column(j)) - 1.0) < 1e-12


def test_correlate_basis_vector():
    d = build_identity_hadamard(4)
    r = np.array([1.0, 0.0, 0.0, 0.0])
    np.testing.assert_allclose(
        d.correlate_all(r), [1, 0, 0, 0, 0.5, 0.5, 0.5, 0.5], rtol=0, atol=0
    )


def test_correlate_zero_vector():
    d = build_identity_hadamard(8)
    np.testing.assert_array_equal(d.correlate_all(np.zeros(8)), np.zeros(16))


@pytest.mark.parametrize("m", [16, 256, 1024])
def test_correlate_matches_dense(m):
    d = build_identity_hadamard(m)
    r = np.random.default_rng(m).normal(size=m)
    dense = d.to_dense().T @ r
    fast = d.correlate_all(r)
    np.testing.assert_allclose(fast, dense, rtol=1e-10, atol=1e-10 * np.abs(dense).max())


def test_correlate_batched_rows():
    d = build_identity_hadamard(16)
    rows = np.random.default_rng(0).normal(size=(5, 16))
    batched = d.correlate_all(rows)
    assert batched.shape == (5, 32)
    for i in range(5):
        np.testing.assert_array_equal(batched[i], d.correlate_all(rows[i]))


def test_correlate_length_mismatch():
    with pytest.raises(ValueError):
        build_identity_hadamard(8).correlate_all(np.zeros(9))


def test_matvec_matches_dense():
    d = build_identity_hadamard(32)
    s = np.random.default_rng(1).normal(size=64)
    np.testing.assert_allclose(d.matvec(s), d.to_dense() @ s, rtol=1e-12, atol=1e-12)


@settings(deadline=None, max_examples=50)
@given(
    st.integers(min_value=0, max_value=6),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_fwht_involution(log2n, seed):
    n = 2**log2n
    v = np.random.default_rng(seed).normal(size=n)
    back = fwht(fwht(v))
    np.testing.assert_allclose(back, n * v, rtol=1e-10, atol=1e-10)


@pytest.mark.parametrize("m", [1, 2, 4, 8, 16, 32, 64])
def test_fwht_equals_hadamard_matrix(m):
    np.testing.assert_array_equal(fwht(np.eye(m)), hadamard(m).astype(float))


@pytest.mark.parametrize("n", [0, 3, 6, 12])
def test_fwht_rejects_bad_length(n):
    with pytest.raises(ValueError):
        fwht(np.zeros(n))


def test_from_matrix_normalizes_columns():
    a = np.array([[3.0, 0.0], [4.0, 2.0]])
    d = Dictionary.from_matrix(a)
    np.testing.assert_allclose(np.linalg.norm(d.to_dense(), axis=0), [1.0, 1.0], atol=1e-15)


def test_from_matrix_rejects_zero_column():
    with pytest.raises(ValueError, match="near-zero"):
        Dictionary.from_matrix(np.array([[1.0, 0.0], [0.0, 0.0]]))
