"""Inner loops of the Hankel barrier.

Each kernel has a numba version and a pure-numpy version with identical
semantics. The numba path is used when numba imports and the environment
variable ``CONEPREDICTOR_NUMBA`` is not set to ``0``. Both paths are always
importable so tests and ``benchmarks/bench_kernels.py`` can compare them.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("CONEPREDICTOR_NUMBA", "1").lower() not in (
    "0",
    "false",
    "no",
    "off",
)


# -- pure numpy ---------------------------------------------------------------


def _antidiagonal_index(order: int) -> np.ndarray:
    idx = np.arange(order)
    return idx[:, None] + idx[None, :]


def hankel_matrix_np(s: np.ndarray) -> np.ndarray:
    order = (s.shape[0] + 1) // 2
    return s[_antidiagonal_index(order)]


def antidiagonal_sums_np(w: np.ndarray) -> np.ndarray:
    order = w.shape[0]
    return np.bincount(_antidiagonal_index(order).ravel(), weights=w.ravel(), minlength=2 * order - 1)


def hankel_pair_form_np(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """``T[k, l] = tr(P H_k Q H_l)`` for the Hankel basis matrices ``H_k``."""
    order = p.shape[0]
    dim = 2 * order - 1
    # P H_k Q has entries sum_{b+c=k} P[a,b] Q[c,d]; group (b, c) by b+c.
    outer = p[:, :, None, None] * q[None, None, :, :]  # [a, b, c, d]
    anti = _antidiagonal_index(order)
    mk = np.zeros((dim, order, order))
    for b in range(order):
        for c in range(order):
            mk[anti[b, c]] += outer[:, b, c, :]
    sel = np.zeros((order * order, dim))
    sel[np.arange(order * order), anti.ravel()] = 1.0
    return mk.reshape(dim, order * order) @ sel


# -- numba --------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def hankel_matrix_nb(s):
        order = (s.shape[0] + 1) // 2
        out = np.empty((order, order))
        for i in range(order):
            for j in range(order):
                out[i, j] = s[i + j]
        return out

    @njit(cache=True)
    def antidiagonal_sums_nb(w):
        order = w.shape[0]
        out = np.zeros(2 * order - 1)
        for i in range(order):
            for j in range(order):
                out[i + j] += w[i, j]
        return out

    @njit(cache=True)
    def hankel_pair_form_nb(p, q):
        order = p.shape[0]
        dim = 2 * order - 1
        out = np.zeros((dim, dim))
        for a in range(order):
            for b in range(order):
                pab = p[a, b]
                for c in range(order):
                    k = b + c
                    for d in range(order):
                        out[k, a + d] += pab * q[c, d]
        return out

else:  # pragma: no cover
    hankel_matrix_nb = hankel_matrix_np
    antidiagonal_sums_nb = antidiagonal_sums_np
    hankel_pair_form_nb = hankel_pair_form_np


BACKENDS = {
    "numpy": (hankel_matrix_np, antidiagonal_sums_np, hankel_pair_form_np),
    "numba": (hankel_matrix_nb, antidiagonal_sums_nb, hankel_pair_form_nb),
}

BACKEND = "numba" if USE_NUMBA else "numpy"
hankel_matrix, antidiagonal_sums, hankel_pair_form = BACKENDS[BACKEND]
