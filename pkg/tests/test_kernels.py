import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conepredictor import _kernels
from conepredictor.cones import HankelCone

pytestmark = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


@given(st.integers(1, 9), st.integers(0, 10_000))
def test_backends_agree(order, seed):
    rng = np.random.default_rng(seed)
    s = rng.normal(size=2 * order - 1)
    w = rng.normal(size=(order, order))
    p, q = rng.normal(size=(order, order)), rng.normal(size=(order, order))
    (hm_np, ad_np, pf_np), (hm_nb, ad_nb, pf_nb) = _kernels.BACKENDS["numpy"], _kernels.BACKENDS["numba"]
    assert np.array_equal(hm_np(s), hm_nb(s))
    assert np.allclose(ad_np(w), ad_nb(w), rtol=1e-13, atol=1e-13)
    assert np.allclose(pf_np(p, q), pf_nb(p, q), rtol=1e-12, atol=1e-12)


def test_hankel_matrix_matches_definition():
    s = np.arange(5.0)
    assert np.array_equal(_kernels.hankel_matrix_np(s), oracles.hankel_from_moments(s))


def test_pair_form_by_trace_formula():
    rng = np.random.default_rng(3)
    order = 3
    p, q = rng.normal(size=(order, order)), rng.normal(size=(order, order))
    basis = [oracles.hankel_from_moments(np.eye(2 * order - 1)[k]) for k in range(2 * order - 1)]
    expected = np.array([[np.trace(p @ hk @ q @ hl) for hl in basis] for hk in basis])
    assert np.allclose(_kernels.hankel_pair_form_np(p, q), expected, atol=1e-13)


def test_env_flag_selects_numpy(monkeypatch):
    import importlib

    monkeypatch.setenv("CONEPREDICTOR_NUMBA", "0")
    mod = importlib.reload(_kernels)
    try:
        assert mod.BACKEND == "numpy"
        x = HankelCone(2).random_interior(np.random.default_rng(0))
        assert np.isfinite(HankelCone(2).value(x))
    finally:
        monkeypatch.delenv("CONEPREDICTOR_NUMBA")
        importlib.reload(_kernels)
