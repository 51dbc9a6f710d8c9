"""Example problems with known optima.

All randomness comes from :func:`make_rng`, which derives an independent
stream for each generator name from one 64-bit seed. The default seed can be
overridden with the ``CONEPREDICTOR_SEED`` environment variable.
"""
from __future__ import annotations

import math
import os
import zlib
from typing import NamedTuple

import numpy as np

from .cones import PSDCone, svec
from .errors import ParameterOutOfRange, UnknownExample
from .geometry import ConicProblem

DEFAULT_SEED = 20240917


def default_seed() -> int:
    raw = os.environ.get("CONEPREDICTOR_SEED")
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw, 0) & (2**64 - 1)
    except ValueError:
        raise ParameterOutOfRange(f"CONEPREDICTOR_SEED must be an integer, got {raw!r}") from None


def make_rng(seed: int | None, stream: str) -> np.random.Generator:
    """Independent generator for ``stream``, derived from ``seed``."""
    if seed is None:
        seed = default_seed()
    key = zlib.crc32(stream.encode())
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), key]))


class KnownOptimum(NamedTuple):
    y_star: np.ndarray
    s_star: np.ndarray
    f_star: float
    x_star: np.ndarray | None


def _with_optimum(problem: ConicProblem):
    if problem.y_star is None:
        return problem, None
    return problem, KnownOptimum(problem.y_star, problem.s_star, problem.f_star, problem.x_star)


# -- planar sets ----------------------------------------------------------------


def disc2d(b=(1.0, 0.0), y_start=(0.0, 0.0)) -> ConicProblem:
    """``max <b, y> : |y| <= 1``; the optimum is not sharp."""
    b = np.asarray(b, dtype=float)
    y_star = b / np.linalg.norm(b)
    return ConicProblem(
        A=-np.eye(2), b=b, c=np.zeros(2), cone="disc2d", y_start=y_start,
        y_star=y_star, s_star=y_star.copy(), f_star=float(np.linalg.norm(b)), name="disc2d",
    )


def parabola2d(b=(-1.0, 0.0), y_start=(1.0, 0.5)) -> ConicProblem:
    """``max <b, y> : y_2 >= 0, y_1 >= y_2^2``.

    The optimum is the vertex ``0`` whenever ``b_1 < 0`` and ``b_2 <= 0``.
    """
    b = np.asarray(b, dtype=float)
    known = {}
    if b[0] < 0.0 and b[1] <= 0.0:
        known = dict(y_star=np.zeros(2), s_star=np.zeros(2), f_star=0.0)
    return ConicProblem(A=-np.eye(2), b=b, c=np.zeros(2), cone="parabola2d", y_start=y_start, name="parabola2d", **known)


# -- polyhedral -----------------------------------------------------------------


def sharp_lp(m: int = 3, n: int = 6, seed: int | None = None) -> ConicProblem:
    """LP ``max <b, y> : A^T y <= c`` with a unique, strictly complementary vertex.

    A basis ``B`` of ``m`` columns is chosen; ``x_B > 0``, ``s_N > 0`` and
    ``y_*`` are drawn and ``b = A_B x_B``, ``c = A^T y_* + s_*``. ``A`` has a
    positive null vector, so the dual feasible set is bounded.
    """
    if not 1 <= m < n:
        raise ParameterOutOfRange("sharp_lp needs 1 <= m < n")
    rng = make_rng(seed, f"sharp_lp/{m}/{n}")
    while True:
        a0 = rng.normal(size=(m, n - 1))
        u = rng.uniform(0.5, 1.5, size=n - 1)
        A = np.column_stack([a0, -a0 @ u])
        A /= np.linalg.norm(A, axis=0)
        basis = np.sort(rng.choice(n, size=m, replace=False))
        if np.linalg.cond(A[:, basis]) < 1e3 and np.linalg.matrix_rank(A) == m:
            break
    nonbasic = np.setdiff1d(np.arange(n), basis)
    x_star = np.zeros(n)
    x_star[basis] = rng.uniform(0.5, 1.5, size=m)
    s_star = np.zeros(n)
    s_star[nonbasic] = rng.uniform(0.5, 1.5, size=n - m)
    y_star = rng.normal(size=m)
    c = A.T @ y_star + s_star
    b = A @ x_star
    # step back from the vertex so that s_B = tau and s_N stays positive
    d = np.linalg.solve(A[:, basis].T, np.ones(m))
    growth = A[:, nonbasic].T @ d
    tau = 1.0
    shrink = growth < 0.0
    if np.any(shrink):
        tau = min(tau, 0.5 * float(np.min(s_star[nonbasic][shrink] / -growth[shrink])))
    y_start = y_star - tau * d
    return ConicProblem(
        A=A, b=b, c=c, cone=f"orthant {n}", y_start=y_start, y_star=y_star, s_star=s_star,
        f_star=float(b @ y_star), x_star=x_star, name=f"sharp_lp({m},{n})",
        meta={"basis": basis.tolist(), "seed": seed},
    )


# -- semidefinite ---------------------------------------------------------------


def sharp_sdp(n: int = 3, seed: int | None = None) -> ConicProblem:
    """SDP with a rank ``n-1`` primal and rank one dual slack at the optimum.

    With ``m = r(r+1)/2`` constraints, ``r = n-1``, and the compression of
    ``A^*`` onto the kernel of ``S_*`` invertible, ``y_*`` is a sharp maximum.
    The optimal pair is diagonal in the standard basis; ``A`` is dense.
    """
    if n < 2:
        raise ParameterOutOfRange("sharp_sdp needs n >= 2")
    rng = make_rng(seed, f"sharp_sdp/{n}")
    r = n - 1
    m = r * (r + 1) // 2
    cone = PSDCone(n)
    dim = cone.dim
    x_mat = np.zeros((n, n))
    x_mat[np.arange(r), np.arange(r)] = rng.uniform(0.5, 1.5, size=r)
    s_mat = np.zeros((n, n))
    s_mat[r, r] = rng.uniform(0.5, 1.5)
    block = svec_block_index(n, r)
    while True:
        A = rng.normal(size=(m, dim))
        A /= np.linalg.norm(A, axis=1, keepdims=True)
        compress = A[:, block]
        if np.linalg.cond(compress) < 1e3:
            break
    y_star = rng.normal(size=m)
    s_star = svec(s_mat)
    x_star = svec(x_mat)
    c = A.T @ y_star + s_star
    b = A @ x_star
    # direction d with the kernel block of A^* d equal to the identity
    d = np.linalg.solve(compress.T, svec(np.eye(r)))
    tau = 1.0
    while not cone.contains(s_star + tau * (A.T @ d)) or np.linalg.eigvalsh(cone.mat(s_star + tau * (A.T @ d)))[0] < 0.1 * tau:
        tau *= 0.5
    y_start = y_star - tau * d
    return ConicProblem(
        A=A, b=b, c=c, cone=cone, y_start=y_start, y_star=y_star, s_star=s_star,
        f_star=float(b @ y_star), x_star=x_star, name=f"sharp_sdp({n})", meta={"seed": seed},
    )


def svec_block_index(n: int, r: int) -> np.ndarray:
    """Positions in ``svec`` of the leading ``r x r`` block."""
    rows, cols = np.triu_indices(n)
    return np.flatnonzero((rows < r) & (cols < r))


# -- second-order cone ------------------------------------------------------------


def soc_test(n: int = 3, seed: int | None = None) -> ConicProblem:
    """``max <b, y> : (1, y) in soc(n)``, a ball in ``R^{n-1}``; not sharp."""
    if n < 2:
        raise ParameterOutOfRange("soc_test needs n >= 2")
    rng = make_rng(seed, f"soc_test/{n}")
    b = rng.normal(size=n - 1)
    A = np.hstack([np.zeros((n - 1, 1)), -np.eye(n - 1)])
    c = np.zeros(n)
    c[0] = 1.0
    y_star = b / np.linalg.norm(b)
    return ConicProblem(
        A=A, b=b, c=c, cone=f"soc {n}", y_start=np.zeros(n - 1), y_star=y_star,
        f_star=float(np.linalg.norm(b)), name=f"soc_test({n})",
    )


# -- nonnegative polynomials ------------------------------------------------------


def hankel_poly(n: int = 2, seed: int | None = None) -> ConicProblem:
    """Moment relaxation of ``min_t q(t)`` for a degree ``2n`` polynomial.

    ``q(t) = (t - t_*)^2 (1 + t^{2n-2}) + q_min`` has the unique minimizer
    ``t_*``. The slack is the moment vector ``s = (1, y_1, ..., y_{2n})``
    and ``max <b, y>`` with ``b = -(q_1, ..., q_{2n})`` equals ``q_0 - q_min``,
    attained at the moments of the point mass at ``t_*``.
    """
    if n < 1:
        raise ParameterOutOfRange("hankel_poly needs n >= 1")
    rng = make_rng(seed, f"hankel_poly/{n}")
    t_star = float(rng.uniform(-0.6, 0.6))
    q_min = float(rng.uniform(0.0, 1.0))
    q = np.polynomial.polynomial.polymul([t_star**2, -2.0 * t_star, 1.0], np.r_[1.0, np.zeros(2 * n - 3), 1.0] if n > 1 else [2.0])
    q = np.asarray(q, dtype=float)
    q[0] += q_min
    dim = 2 * n + 1
    A = np.hstack([np.zeros((2 * n, 1)), -np.eye(2 * n)])
    c = np.zeros(dim)
    c[0] = 1.0
    b = -q[1:dim]
    powers = t_star ** np.arange(dim)
    # start at the moments of the uniform measure on [-1, 1]
    k = np.arange(dim)
    moments = np.where(k % 2 == 0, 1.0 / (k + 1.0), 0.0)
    return ConicProblem(
        A=A, b=b, c=c, cone=f"hankel_poly {n}", y_start=moments[1:], y_star=powers[1:],
        f_star=float(q[0] - q_min), name=f"hankel_poly({n})", meta={"t_star": t_star, "q": q.tolist()},
    )


EXAMPLES = {
    "disc2d": disc2d,
    "parabola2d": parabola2d,
    "sharp_lp": sharp_lp,
    "sharp_sdp": sharp_sdp,
    "soc_test": soc_test,
    "hankel_poly": hankel_poly,
}
SEEDED = {"sharp_lp", "sharp_sdp", "soc_test", "hankel_poly"}


def generate_example(name: str, params=(), seed: int | None = None):
    """Build a named example; returns ``(problem, known optimum or None)``.

    ``params`` are the positional size parameters: ``sharp_lp`` takes
    ``(m, n)``, ``sharp_sdp``, ``soc_test`` and ``hankel_poly`` take ``(n,)``,
    the planar examples take the objective ``(b_1, b_2)``.
    """
    if name not in EXAMPLES:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(sorted(EXAMPLES))}")
    params = list(params)
    if name in ("disc2d", "parabola2d"):
        if params and len(params) != 2:
            raise ParameterOutOfRange(f"{name} takes two objective coefficients")
        problem = EXAMPLES[name](*([tuple(float(p) for p in params)] if params else []))
    else:
        ints = []
        for p in params:
            if float(p) != int(float(p)):
                raise ParameterOutOfRange(f"{name} parameters must be integers")
            ints.append(int(float(p)))
        problem = EXAMPLES[name](*ints, seed=default_seed() if seed is None else seed)
    if name in SEEDED:
        problem.meta["seed"] = default_seed() if seed is None else seed
    return _with_optimum(problem)
