"""Cones of the form ``{x : M(x) psd}`` with ``M`` linear, barrier ``-ln det M(x)``.

With ``W = M(x)^{-1}`` and ``L`` the matrix of ``x -> vec M(x)``::

    grad    = -L^T vec(W)
    hess    =  L^T (W kron W) L
    D3[h]   = -L^T (C kron W + W kron C) L,   C = W M(h) W

The psd cone uses the scaled symmetric vectorization (off-diagonals times
sqrt 2) so the Euclidean pairing equals the trace pairing. The Hankel cone
routes the same formulas through the kernels in ``_kernels``.
"""
from __future__ import annotations

import math

import numpy as np
import scipy.linalg as sla

from .. import _kernels
from ..errors import OutsideCone
from .base import Barrier

SQRT2 = math.sqrt(2.0)


class MatrixCone(Barrier):
    order: int
    lin: np.ndarray  # (order*order, dim)

    def mat(self, x) -> np.ndarray:
        return (self.lin @ np.asarray(x, dtype=float)).reshape(self.order, self.order)

    def margin(self, x):
        return float(np.linalg.eigvalsh(self.mat(x))[0])

    def _inverse(self, x):
        m = self.mat(self.check(x))
        try:
            c = sla.cho_factor(m, lower=True)
        except np.linalg.LinAlgError:
            raise OutsideCone(f"{self.descriptor}: matrix is not positive definite") from None
        w = sla.cho_solve(c, np.eye(self.order))
        return 0.5 * (w + w.T), c

    def value(self, x):
        _, c = self._inverse(x)
        return -2.0 * float(np.sum(np.log(np.diag(c[0]))))

    def _vec_adjoint(self, w):
        return self.lin.T @ w.ravel()

    def _pair(self, p, q):
        # T[k, l] = tr(P M_k Q M_l)
        return self.lin.T @ np.kron(p, q) @ self.lin

    def gradient(self, x):
        w, _ = self._inverse(x)
        return -self._vec_adjoint(w)

    def hessian_matrix(self, x):
        w, _ = self._inverse(x)
        h = self._pair(w, w)
        return 0.5 * (h + h.T)

    def third_matrix(self, x, h):
        w, _ = self._inverse(x)
        c = w @ self.mat(h) @ w
        c = 0.5 * (c + c.T)
        t = -(self._pair(c, w) + self._pair(w, c))
        return 0.5 * (t + t.T)

    def _pencil(self, x, h):
        m = self.mat(self.check(x))
        return sla.eigh(self.mat(h), m, eigvals_only=True)

    def sigma_measure(self, x, h):
        return max(0.0, float(self._pencil(x, h)[-1]))

    def max_step(self, x, d):
        lam = float(self._pencil(x, d)[0])
        return math.inf if lam >= 0.0 else -1.0 / lam


def svec_basis(n: int) -> np.ndarray:
    """Matrix of ``svec -> vec`` for symmetric ``n x n`` matrices."""
    rows, cols = np.triu_indices(n)
    lin = np.zeros((n * n, rows.size))
    for k, (i, j) in enumerate(zip(rows, cols)):
        if i == j:
            lin[i * n + i, k] = 1.0
        else:
            lin[i * n + j, k] = lin[j * n + i, k] = 1.0 / SQRT2
    return lin


def svec(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    rows, cols = np.triu_indices(m.shape[0])
    scale = np.where(rows == cols, 1.0, SQRT2)
    return m[rows, cols] * scale


def smat(v, n: int | None = None) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if n is None:
        n = int(round((math.sqrt(8 * v.size + 1) - 1) / 2))
    return (svec_basis(n) @ v).reshape(n, n)


class PSDCone(MatrixCone):
    """Positive semidefinite ``n x n`` matrices in scaled svec coordinates."""

    kind = "psd"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("psd order must be positive")
        self.order = int(n)
        self.dim = n * (n + 1) // 2
        self.nu = float(n)
        self.lin = svec_basis(n)

    @property
    def descriptor(self):
        return f"psd {self.order}"

    def conjugate_point(self, s):
        w, _ = self._inverse(s)
        return svec(w)

    def random_interior(self, rng):
        g = rng.normal(size=(self.order, self.order))
        return svec(g @ g.T / self.order + 0.2 * np.eye(self.order))


def hankel_basis(n: int) -> np.ndarray:
    order = n + 1
    dim = 2 * n + 1
    lin = np.zeros((order * order, dim))
    for i in range(order):
        for j in range(order):
            lin[i * order + j, i + j] = 1.0
    return lin


class HankelCone(MatrixCone):
    """Moment cone ``{s in R^{2n+1} : H(s) psd}``, ``H(s)_{ij} = s_{i+j}``.

    This is the dual of the cone of nonnegative univariate polynomials of
    degree ``2n``; the barrier ``-ln det H(s)`` has parameter ``n + 1``.
    """

    kind = "hankel_poly"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("hankel_poly needs n >= 1")
        self.n = int(n)
        self.order = n + 1
        self.dim = 2 * n + 1
        self.nu = float(n + 1)
        self.lin = hankel_basis(n)

    @property
    def descriptor(self):
        return f"hankel_poly {self.n}"

    def mat(self, x):
        return _kernels.hankel_matrix(np.ascontiguousarray(x, dtype=float))

    def _vec_adjoint(self, w):
        return _kernels.antidiagonal_sums(np.ascontiguousarray(w))

    def _pair(self, p, q):
        return _kernels.hankel_pair_form(np.ascontiguousarray(p), np.ascontiguousarray(q))

    def random_interior(self, rng):
        # Moments of a spread discrete measure. Monomial Hankel matrices are
        # ill-conditioned; many atoms on [-1.3, 1.3] keep cond(H) near 1e4 at n = 6.
        m = 3 * self.order
        atoms = 1.3 * np.cos(np.pi * (np.arange(m) + rng.uniform(0.1, 0.9, m)) / m)
        weights = rng.dirichlet(np.full(m, 3.0))
        powers = atoms[None, :] ** np.arange(self.dim)[:, None]
        return powers @ weights
