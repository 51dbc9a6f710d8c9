import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conepredictor.errors import NotPositiveDefinite, RankDeficient
from conepredictor.linalg import SymOperator, factorize, generalized_eigvalsh, schur_metric, weighted_norm


def test_identity_factor_solves_trivially():
    r = np.array([0.3, -1.2])
    assert np.array_equal(factorize(np.eye(2)).solve(r), r)


def test_diagonal_solve():
    assert np.allclose(SymOperator(np.diag([4.0, 9.0])).solve([4.0, 9.0]), [1.0, 1.0], atol=1e-15)


def test_indefinite_matrix_is_rejected():
    # eigenvalues -1 and 3
    with pytest.raises(NotPositiveDefinite):
        factorize([[1.0, 2.0], [2.0, 1.0]])


def test_asymmetric_input_is_rejected():
    with pytest.raises(ValueError):
        SymOperator([[1.0, 1.0], [0.0, 1.0]])


@pytest.mark.parametrize("side", ["primal", "dual"])
def test_euclidean_norm(side):
    assert weighted_norm(np.eye(2), [3.0, 4.0], side) == pytest.approx(5.0, abs=1e-15)


def test_weighted_norms_by_expansion():
    m = np.diag([4.0, 1.0])
    assert weighted_norm(m, [1.0, 1.0], "primal") == pytest.approx(math.sqrt(5.0), rel=1e-15)
    assert weighted_norm(m, [1.0, 1.0], "dual") == pytest.approx(math.sqrt(1.25), rel=1e-15)


def test_bad_side_name():
    with pytest.raises(ValueError):
        weighted_norm(np.eye(2), [1.0, 0.0], "left")


@pytest.mark.parametrize(
    "a, b, g",
    [
        (np.eye(2), np.eye(2), np.eye(2)),
        (np.array([[1.0, 1.0]]), np.eye(2), np.array([[2.0]])),
        (np.array([[1.0, 0.0]]), np.diag([4.0, 1.0]), np.array([[0.25]])),
    ],
)
def test_schur_metric(a, b, g):
    assert np.allclose(schur_metric(a, b).matrix, g, atol=1e-15)


def test_schur_metric_rank_deficient():
    with pytest.raises(RankDeficient):
        schur_metric(np.array([[1.0, 1.0], [2.0, 2.0]]), np.eye(2))


def test_generalized_eigenvalues_diagonal():
    lam = generalized_eigvalsh(np.diag([2.0, 9.0]), np.diag([1.0, 3.0]))
    assert np.allclose(lam, [2.0, 3.0])


def _spd(seed, n):
    g = np.random.default_rng(seed).normal(size=(n, n))
    return g @ g.T + n * np.eye(n)


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_dual_norm_is_inverse_quadratic_form(seed, n):
    m = _spd(seed, n)
    v = np.random.default_rng(seed + 1).normal(size=n)
    expected = math.sqrt(v @ np.linalg.solve(m, v))
    assert weighted_norm(m, v, "dual") == pytest.approx(expected, rel=1e-10)
    assert weighted_norm(m, v, "primal") == pytest.approx(math.sqrt(v @ m @ v), rel=1e-12)


@given(arrays(float, 3, elements=st.floats(-10, 10)), st.integers(0, 1000))
def test_cauchy_schwarz_between_dual_pair(v, seed):
    m = _spd(seed, 3)
    w = np.random.default_rng(seed).normal(size=3)
    assert abs(v @ w) <= weighted_norm(m, v, "dual") * weighted_norm(m, w, "primal") * (1 + 1e-12) + 1e-12
