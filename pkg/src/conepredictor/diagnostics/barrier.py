"""Numerical checks of barrier identities, negative curvature and derivatives.

All pairings are normalized: directions are scaled to unit local norm
before testing, so thresholds are scale free.
"""
from __future__ import annotations

import math

import numpy as np

from ..cones import Barrier, make_cone
from ..errors import HypothesisNotSatisfied, OutsideCone
from ..geometry import ConicProblem, DualPoint
from ..linalg import SymOperator, generalized_eigvalsh
from .report import Report, at_least, at_most, info

FD_THRESHOLDS = {"gradient": 1e-6, "hessian": 1e-5, "third": 1e-4}
HOMOGENEITY_TAUS = (0.5, 2.0, 10.0)


def _rel(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = max(float(np.linalg.norm(b)), np.finfo(float).tiny)
    return float(np.linalg.norm(a - b)) / scale


# -- identities -----------------------------------------------------------------


def identity_residuals(barrier: Barrier, x) -> dict:
    """Relative residuals of the homogeneity identities at ``x``.

    ``gx``: ``<grad F, x> = -nu``; ``hx``: ``hess F x = -grad F``;
    ``x3``: ``D3F[x] = -2 hess F``; ``ndec``: ``||grad F||_x^2 = nu``.
    """
    x = barrier.check(x)
    g = barrier.gradient(x)
    hs = barrier.hessian(x)
    h = hs.matrix
    nd = hs.norm(g, "dual") ** 2
    return {
        "gx": abs(g @ x + barrier.nu) / barrier.nu,
        "hx": _rel(h @ x, -g),
        "x3": _rel(barrier.third_matrix(x, x), -2.0 * h),
        "ndec": abs(nd - barrier.nu) / barrier.nu,
    }


def homogeneity_residuals(barrier: Barrier, x, taus=HOMOGENEITY_TAUS) -> dict:
    """Relative residuals of ``F(tx) = F(x) - nu ln t`` and its derivatives."""
    x = barrier.check(x)
    f, g, h = barrier.value(x), barrier.gradient(x), barrier.hessian_matrix(x)
    out = {"lh": 0.0, "gt": 0.0, "ht": 0.0}
    for t in taus:
        ft = barrier.value(t * x)
        target = f - barrier.nu * math.log(t)
        out["lh"] = max(out["lh"], abs(ft - target) / max(1.0, abs(target)))
        out["gt"] = max(out["gt"], _rel(barrier.gradient(t * x), g / t))
        out["ht"] = max(out["ht"], _rel(barrier.hessian_matrix(t * x), h / t**2))
    return out


def _unit(hs: SymOperator, h) -> np.ndarray:
    n = hs.norm(h, "primal")
    return h / n if n > 0 else h


def self_concordance_ratio(barrier: Barrier, x, h) -> float:
    """``|D3F[h,h,h]| / (2 <hess F h, h>^{3/2})``; at most one."""
    hs = barrier.hessian(x)
    h = _unit(hs, np.asarray(h, dtype=float))
    return abs(float(h @ barrier.third_matrix(x, h) @ h)) / 2.0


def nc_pairing(barrier: Barrier, x, h, u) -> float:
    """``<D3F(x)[h, h], u>`` for unit ``h, u``; nonpositive under negative curvature."""
    hs = barrier.hessian(x)
    h = _unit(hs, np.asarray(h, dtype=float))
    u = _unit(hs, np.asarray(u, dtype=float))
    return float(h @ barrier.third_matrix(x, u) @ h)


def nc_gradient_shift(barrier: Barrier, x, h, u) -> float:
    """``<grad F(x+h) - grad F(x) - hess F(x) h, u>`` for unit ``u``; nonpositive."""
    hs = barrier.hessian(x)
    u = _unit(hs, np.asarray(u, dtype=float))
    d = barrier.gradient(x + h) - barrier.gradient(x) - hs.matrix @ h
    return float(d @ u)


def hessian_positivity(barrier: Barrier, x, h, u) -> float:
    """``<hess F(x) h, u>`` for unit ``h, u`` in the cone; nonnegative."""
    hs = barrier.hessian(x)
    h = _unit(hs, np.asarray(h, dtype=float))
    u = _unit(hs, np.asarray(u, dtype=float))
    return float(u @ hs.matrix @ h)


def hessian_sandwich_margin(barrier: Barrier, x, h, alpha: float) -> float:
    """Smallest relative slack of

        hess F(x) / (1 + alpha sigma_x(h))^2  <=  hess F(x + alpha h)  <=  hess F(x) / (1 - alpha)^2

    for ``x, x + h`` interior. Nonnegative when both inequalities hold.
    """
    x = barrier.check(x)
    h = np.asarray(h, dtype=float)
    if not barrier.contains(x + h):
        raise HypothesisNotSatisfied("x + h must be interior")
    sig = barrier.sigma_measure(x, h)
    lam = generalized_eigvalsh(barrier.hessian_matrix(x + alpha * h), barrier.hessian_matrix(x))
    low = lam[0] * (1.0 + alpha * sig) ** 2 - 1.0
    high = 1.0 - lam[-1] * (1.0 - alpha) ** 2
    return float(min(low, high))


def recession_primal_gap(barrier: Barrier, x, u) -> float:
    """``<-grad F(x), u> - ||u||_x`` for ``u`` in the cone, relative; nonnegative."""
    hs = barrier.hessian(x)
    a = float(-barrier.gradient(x) @ u)
    return (a - hs.norm(u, "primal")) / max(a, np.finfo(float).tiny)


def recession_dual_gap(barrier: Barrier, x, s) -> float:
    """``<s, x> - ||s||_x^*`` for ``s`` in the dual cone, relative; nonnegative."""
    hs = barrier.hessian(x)
    a = float(s @ x)
    return (a - hs.norm(s, "dual")) / max(a, np.finfo(float).tiny)


def dikin_boundary_points(barrier: Barrier, x, rng, r: float = 0.99, count: int = 16) -> np.ndarray:
    """Random points on the boundary of the Dikin ellipsoid of radius ``r``."""
    hs = barrier.hessian(x)
    lower = hs.factor().lower
    pts = []
    for _ in range(count):
        z = rng.normal(size=barrier.dim)
        z /= np.linalg.norm(z)
        # ||L^{-T} z||_x = ||z|| = 1
        d = np.linalg.solve(lower.T, z)
        pts.append(x + r * d)
    return np.array(pts)


def dual_cone_sample(barrier: Barrier, rng) -> np.ndarray:
    """A point of the dual cone: ``-grad F(z)`` for a random interior ``z``."""
    return -barrier.gradient(barrier.random_interior(rng))


# -- finite differences -----------------------------------------------------------


class ReducedBarrier:
    """``f(y) = F_*(c - A^T y)`` exposed through the oracle interface."""

    def __init__(self, problem: ConicProblem):
        self.problem = problem
        self.dim = problem.m
        self.nu = problem.nu

    def contains(self, y) -> bool:
        return self.problem.cone.contains(self.problem.c - self.problem.A.T @ np.asarray(y, dtype=float))

    def check(self, y):
        if not self.contains(y):
            raise OutsideCone("y is not strictly feasible")
        return np.asarray(y, dtype=float)

    def value(self, y):
        return DualPoint(self.problem, y).value

    def gradient(self, y):
        return DualPoint(self.problem, y).gradient

    def hessian_matrix(self, y):
        return DualPoint(self.problem, y).hessian.matrix

    def hessian(self, y):
        return DualPoint(self.problem, y).hessian

    def third_matrix(self, y, h):
        A = self.problem.A
        s = self.problem.c - A.T @ np.asarray(y, dtype=float)
        return -(A @ self.problem.cone.third_matrix(s, A.T @ np.asarray(h, dtype=float)) @ A.T)


def _oracle(obj):
    if isinstance(obj, ConicProblem):
        return ReducedBarrier(obj)
    if isinstance(obj, (Barrier, ReducedBarrier)):
        return obj
    return make_cone(obj)


def _directional(fn, oracle, x, d, step):
    """Richardson-extrapolated central difference of ``fn`` along ``d``."""
    while not (oracle.contains(x + step * d) and oracle.contains(x - step * d)):
        step *= 0.5
        if step < 1e-14:
            raise OutsideCone("no room for finite differences")

    def central(t):
        return (np.asarray(fn(x + t * d)) - np.asarray(fn(x - t * d))) / (2.0 * t)

    return (4.0 * central(0.5 * step) - central(step)) / 3.0


def fd_check(obj, point, order: str = "gradient", rng=None, step: float = 1e-3) -> float:
    """Largest relative error between an analytic derivative and finite differences.

    ``obj`` is a barrier, a cone descriptor or a :class:`ConicProblem` (then
    the reduced function ``f`` is checked at ``point = y``). Steps are
    ``step`` in the local norm, one Richardson level. ``order`` is
    ``gradient``, ``hessian`` or ``third``; the latter uses a random direction.
    """
    oracle = _oracle(obj)
    x = oracle.check(point)
    hs = oracle.hessian(x)
    n = x.size
    eye = np.eye(n)
    if order == "gradient":
        g = oracle.gradient(x)
        fd = np.array([
            _directional(oracle.value, oracle, x, eye[i], step / math.sqrt(hs.matrix[i, i])) for i in range(n)
        ])
        return _rel(fd, g)
    if order == "hessian":
        h = hs.matrix
        cols = [
            _directional(oracle.gradient, oracle, x, eye[i], step / math.sqrt(h[i, i])) for i in range(n)
        ]
        fd = np.column_stack(cols)
        return _rel(0.5 * (fd + fd.T), h)
    if order == "third":
        rng = rng if rng is not None else np.random.default_rng(0)
        d = rng.normal(size=n)
        d /= hs.norm(d, "primal")
        fd = _directional(oracle.hessian_matrix, oracle, x, d, step)
        return _rel(0.5 * (fd + fd.T), oracle.third_matrix(x, d))
    raise ValueError(f"order must be gradient, hessian or third, not {order!r}")


# -- ellipsoid lemma --------------------------------------------------------------


def _ellipsoid_inside(barrier: Barrier, u, hmat, rng, probes: int = 256) -> bool:
    """Sampled test of ``{v : <H(v-u), v-u> <= 1} in K`` via boundary steps."""
    if not barrier.contains(u):
        return False
    lower = np.linalg.cholesky(hmat)
    dirs = [np.linalg.solve(lower.T, e) for e in np.eye(barrier.dim)]
    dirs += [np.linalg.solve(lower.T, z / np.linalg.norm(z)) for z in rng.normal(size=(probes, barrier.dim))]
    for d in dirs:
        for sgn in (1.0, -1.0):
            if barrier.max_step(u, sgn * d) < 1.0 - 1e-12:
                return False
    return True


def check_lemma_ell(barrier, x, u, H=None, rng=None, tol: float = 1e-9) -> bool:
    """Test ``H >= hess F(x) / (4 nu^2)`` after verifying the hypotheses.

    The hypotheses are ``<grad F(x), u - x> >= 0`` and that the ellipsoid of
    ``H`` centered at ``u`` lies in the cone. With ``H`` omitted the Dikin
    ellipsoid ``H = hess F(u)`` is used, which gives the corollary
    ``hess F(u) >= hess F(x) / (4 nu^2)``.
    """
    barrier = make_cone(barrier)
    rng = rng if rng is not None else np.random.default_rng(0)
    x = barrier.check(x)
    u = np.asarray(u, dtype=float)
    if not barrier.contains(u):
        raise HypothesisNotSatisfied("u is not interior")
    hmat = barrier.hessian_matrix(u) if H is None else np.asarray(H, dtype=float)
    gx = barrier.gradient(x)
    lhs = float(gx @ (u - x))
    if lhs < -1e-12 * (abs(gx @ u) + abs(gx @ x)):
        raise HypothesisNotSatisfied(f"<grad F(x), u - x> = {lhs:.3e} < 0")
    if not _ellipsoid_inside(barrier, u, hmat, rng):
        raise HypothesisNotSatisfied("the ellipsoid of H around u leaves the cone")
    lam = generalized_eigvalsh(hmat, barrier.hessian_matrix(x))
    return bool(lam[0] >= 1.0 / (4.0 * barrier.nu**2) - tol)


def check_step_hessian(barrier, x, u, tol: float = 1e-9) -> bool:
    """``hess F(x + u) <= 4 nu^2 hess F(x)`` for ``u`` in the cone."""
    barrier = make_cone(barrier)
    lam = generalized_eigvalsh(barrier.hessian_matrix(np.asarray(x) + u), barrier.hessian_matrix(x))
    return bool(lam[-1] <= 4.0 * barrier.nu**2 * (1.0 + tol))


# -- suite ------------------------------------------------------------------------


def identity_suite(barrier, samples: int = 100, seed: int = 0) -> Report:
    """Run every barrier check at ``samples`` random interior points."""
    barrier = make_cone(barrier)
    rng = np.random.default_rng(seed)
    worst: dict[str, float] = {}
    lows: dict[str, float] = {}

    def hi(name, v):
        worst[name] = max(worst.get(name, -math.inf), float(v))

    def lo(name, v):
        lows[name] = min(lows.get(name, math.inf), float(v))

    dikin_ok = True
    for _ in range(samples):
        x = barrier.random_interior(rng)
        h = rng.normal(size=barrier.dim)
        if barrier.homogeneous:
            for k, v in identity_residuals(barrier, x).items():
                hi(k, v)
            for k, v in homogeneity_residuals(barrier, x).items():
                hi(k, v)
        hs = barrier.hessian(x)
        hi("self_concordance", self_concordance_ratio(barrier, x, h))
        hi("sigma_bound", barrier.sigma_measure(x, h) / hs.norm(h, "primal"))
        if barrier.negative_curvature:
            u = barrier.random_interior(rng)
            hi("nc_pairing", nc_pairing(barrier, x, h, u))
            hk = barrier.random_interior(rng)
            lo("hessian_positivity", hessian_positivity(barrier, x, hk, u))
            step = h / hs.norm(h, "primal") * rng.uniform(0.1, 0.9)
            hi("nc_gradient_shift", nc_gradient_shift(barrier, x, step, u))
            reach = min(barrier.max_step(x, h), 20.0 / hs.norm(h, "primal"))
            lo("hessian_sandwich", hessian_sandwich_margin(barrier, x, 0.9 * reach * h, rng.uniform(0.0, 0.99)))
            lo("recession_primal", recession_primal_gap(barrier, x, u))
            lo("recession_dual", recession_dual_gap(barrier, x, dual_cone_sample(barrier, rng)))
        pts = dikin_boundary_points(barrier, x, rng, 0.99, 4)
        dikin_ok &= all(barrier.contains(p) for p in pts)
        for order in ("gradient", "hessian", "third"):
            hi(f"fd_{order}", fd_check(barrier, x, order, rng))

    rep = Report()
    rep.add(info("nu", barrier.nu))
    rep.add(info("samples", samples))
    limits = {"gx": 1e-8, "hx": 1e-8, "x3": 1e-8, "ndec": 1e-8, "lh": 1e-8, "gt": 1e-8, "ht": 1e-8}
    for k, lim in limits.items():
        if k in worst:
            rep.add(at_most(f"identity_{k}", worst[k], lim))
    rep.add(at_most("self_concordance", worst["self_concordance"], 1.0 + 1e-6))
    rep.add(at_most("sigma_bound", worst["sigma_bound"], 1.0 + 1e-8))
    if barrier.negative_curvature:
        rep.add(at_most("nc_pairing", worst["nc_pairing"], 1e-9))
        rep.add(at_most("nc_gradient_shift", worst["nc_gradient_shift"], 1e-9))
        rep.add(at_least("hessian_positivity", lows["hessian_positivity"], -1e-9))
        rep.add(at_least("hessian_sandwich", lows["hessian_sandwich"], -1e-8))
        rep.add(at_least("recession_primal", lows["recession_primal"], -1e-9))
        rep.add(at_least("recession_dual", lows["recession_dual"], -1e-9))
    rep.add(at_least("dikin_containment", float(dikin_ok), 1.0))
    for order in ("gradient", "hessian", "third"):
        rep.add(at_most(f"fd_{order}", worst[f"fd_{order}"], FD_THRESHOLDS[order]))
    return rep
