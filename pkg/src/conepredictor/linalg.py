"""Dense symmetric linear algebra used by every other module.

Problem sizes are desk scale, so everything is a dense Cholesky without
pivoting. A failed pivot is the cone-boundary signal and is surfaced as
:class:`~conepredictor.errors.NotPositiveDefinite`, never regularized away.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .errors import NotPositiveDefinite, RankDeficient

SYMMETRY_RTOL = 1e-8
RANK_RTOL = 64.0 * np.finfo(float).eps


class Cholesky:
    """Lower Cholesky factor of a positive-definite matrix."""

    __slots__ = ("lower",)

    def __init__(self, lower: np.ndarray):
        self.lower = lower

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return sla.cho_solve((self.lower, True), rhs, check_finite=False)

    def half_solve(self, rhs: np.ndarray) -> np.ndarray:
        """Return L^{-1} rhs, so that ||L^{-1} r||^2 = <r, M^{-1} r>."""
        return sla.solve_triangular(self.lower, rhs, lower=True, check_finite=False)

    def logdet(self) -> float:
        return 2.0 * float(np.sum(np.log(np.diag(self.lower))))


def _cholesky(matrix: np.ndarray) -> Cholesky:
    if not np.all(np.isfinite(matrix)):
        raise NotPositiveDefinite("matrix has non-finite entries")
    try:
        lower = np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
    if not np.all(np.diag(lower) > 0.0):
        raise NotPositiveDefinite("non-positive pivot")
    return Cholesky(lower)


class SymOperator:
    """An immutable dense symmetric matrix with a write-once Cholesky cache.

    The input is symmetrized by averaging with its transpose. Asymmetry larger
    than ``SYMMETRY_RTOL`` relative to the matrix norm is a construction error,
    since it means the caller assembled the wrong object.
    """

    __slots__ = ("matrix", "_factor")

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float, copy=True)
        if m.ndim == 0:
            m = m.reshape(1, 1)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        scale = max(np.max(np.abs(m), initial=0.0), np.finfo(float).tiny)
        if np.max(np.abs(m - m.T), initial=0.0) > SYMMETRY_RTOL * scale:
            raise ValueError("matrix is not symmetric")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        self.matrix = m
        self._factor = None

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def factor(self) -> Cholesky:
        if self._factor is None:
            self._factor = _cholesky(self.matrix)
        return self._factor

    def is_positive_definite(self) -> bool:
        try:
            self.factor()
        except NotPositiveDefinite:
            return False
        return True

    def solve(self, rhs) -> np.ndarray:
        return self.factor().solve(np.asarray(rhs, dtype=float))

    def __matmul__(self, other):
        return self.matrix @ other

    def quad(self, v) -> float:
        v = np.asarray(v, dtype=float)
        return float(v @ (self.matrix @ v))

    def norm(self, v, side: str = "primal") -> float:
        return weighted_norm(self, v, side)

    def __repr__(self):
        return f"SymOperator(n={self.n})"


def factorize(m) -> Cholesky:
    """Factorize a symmetric matrix, raising if it is not positive definite."""
    if not isinstance(m, SymOperator):
        m = SymOperator(m)
    return m.factor()


def weighted_norm(m, v, side: str = "primal") -> float:
    """``<Mv, v>^{1/2}`` on the primal side, ``<v, M^{-1} v>^{1/2}`` on the dual side."""
    if not isinstance(m, SymOperator):
        m = SymOperator(m)
    v = np.asarray(v, dtype=float)
    if side == "primal":
        z = m.factor().lower.T @ v
    elif side == "dual":
        z = m.factor().half_solve(v)
    else:
        raise ValueError(f"side must be 'primal' or 'dual', not {side!r}")
    return float(np.sqrt(z @ z))


def schur_metric(a, b) -> SymOperator:
    """Return ``G = A B^{-1} A^T`` for positive-definite ``B``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if not isinstance(b, SymOperator):
        b = SymOperator(b)
    binv_at = b.solve(a.T)
    g = SymOperator(0.5 * (a @ binv_at + (a @ binv_at).T))
    try:
        pivots = np.diag(g.factor().lower)
    except NotPositiveDefinite:
        pivots = np.zeros(1)
    # exact singularity shows up as a pivot at rounding level, not as a failure
    if np.min(pivots) ** 2 <= RANK_RTOL * np.max(np.diag(g.matrix)):
        raise RankDeficient("A B^-1 A^T is singular; A must have full row rank")
    return g


def generalized_eigvalsh(m, n) -> np.ndarray:
    """Eigenvalues of the pencil (M, N) with N positive definite, ascending."""
    m = m.matrix if isinstance(m, SymOperator) else np.asarray(m, dtype=float)
    n = n.matrix if isinstance(n, SymOperator) else np.asarray(n, dtype=float)
    try:
        return sla.eigh(0.5 * (m + m.T), 0.5 * (n + n.T), eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
