"""The reduced dual problem ``max <b, y> : c - A^T y in K*`` and its geometry.

Everything here is expressed through ``f(y) = F_*(c - A^T y)``, where the
cone oracle attached to a :class:`ConicProblem` is the barrier of the cone
holding the slack. Hence

    grad f(y) = -A grad F_*(s),     hess f(y) = A hess F_*(s) A^T.

A :class:`DualPoint` caches these at one ``y`` together with the Cholesky
factor of ``hess f(y)``, so every local norm at ``y`` is a triangular solve.

Iterates carry their slack explicitly. Near the optimum the active slack
components are of order ``mu`` while ``c`` and ``A^T y`` are of order one,
so recomputing ``c - A^T y`` would lose most of their relative precision.
Steps update the slack by ``s - t A^T d`` instead, which keeps it accurate;
the drift from ``c - A^T y`` stays at rounding level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .cones import Barrier, make_cone
from .errors import (
    InfeasibleStart,
    MissingOptimum,
    NotPositiveDefinite,
    OutsideCone,
    RankDeficient,
    StepAtBoundary,
    UnboundedStep,
)
from .linalg import SymOperator

# trial steps are only evaluated strictly inside [0, alpha_bar)
BOUNDARY_FRACTION = 1.0 - 1e-12


@dataclass
class ConicProblem:
    """Data of the primal-dual pair

        min <c, x> : A x = b, x in K          max <b, y> : c - A^T y in K*

    ``cone`` is the barrier oracle of the slack cone ``K*``. The optional
    ``y_star``, ``s_star``, ``f_star``, ``x_star`` hold a known optimum.
    """

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    cone: Barrier
    y_start: np.ndarray
    y_star: np.ndarray | None = None
    s_star: np.ndarray | None = None
    f_star: float | None = None
    x_star: np.ndarray | None = None
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.cone = make_cone(self.cone)
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        self.c = np.asarray(self.c, dtype=float).reshape(-1)
        self.y_start = np.asarray(self.y_start, dtype=float).reshape(-1)
        m, n = self.A.shape
        if n != self.cone.dim:
            raise ValueError(f"A has {n} columns but the cone has dimension {self.cone.dim}")
        if self.b.shape != (m,) or self.y_start.shape != (m,):
            raise ValueError(f"b and y_start must have length {m}")
        if self.c.shape != (n,):
            raise ValueError(f"c must have length {n}")
        for name in ("y_star", "s_star", "x_star"):
            val = getattr(self, name)
            if val is not None:
                setattr(self, name, np.asarray(val, dtype=float).reshape(-1))
        if self.y_star is not None and self.s_star is None:
            self.s_star = self.c - self.A.T @ self.y_star
        if self.y_star is not None and self.f_star is None:
            self.f_star = float(self.b @ self.y_star)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def nu(self) -> float:
        return self.cone.nu

    @property
    def has_optimum(self) -> bool:
        return self.y_star is not None

    def validate(self) -> "ConicProblem":
        """Check full row rank of ``A`` and strict feasibility of ``y_start``."""
        if np.linalg.matrix_rank(self.A) < self.m:
            raise RankDeficient("A must have full row rank")
        if not self.cone.contains(self.c - self.A.T @ self.y_start):
            raise InfeasibleStart("c - A^T y_start is not strictly inside the cone")
        return self


class Slack(NamedTuple):
    s: np.ndarray
    interior: bool


def slack(problem: ConicProblem, y) -> Slack:
    """``s = c - A^T y`` together with a strict-interior flag."""
    s = problem.c - problem.A.T @ np.asarray(y, dtype=float)
    return Slack(s, bool(problem.cone.contains(s)))


class DualPoint:
    """Derivatives of ``f`` and the factored local metric at one point ``y``.

    Pass ``s`` to use a tracked slack instead of recomputing ``c - A^T y``.
    """

    def __init__(self, problem: ConicProblem, y, s=None):
        self.problem = problem
        self.y = np.array(y, dtype=float)
        self.s = problem.c - problem.A.T @ self.y if s is None else np.array(s, dtype=float)
        cone, A = problem.cone, problem.A
        self.slack_gradient = cone.gradient(self.s)
        self.slack_hessian = cone.hessian_matrix(self.s)
        self.gradient = -A @ self.slack_gradient
        try:
            self.hessian = SymOperator(A @ self.slack_hessian @ A.T)
            self._factor = self.hessian.factor()
        except NotPositiveDefinite:
            raise RankDeficient("A hess F_*(s) A^T is singular") from None
        self._v = None

    # local norms at y
    def dual_norm(self, g) -> float:
        z = self._factor.half_solve(np.asarray(g, dtype=float))
        return float(math.sqrt(z @ z))

    def primal_norm(self, h) -> float:
        return math.sqrt(max(self.hessian.quad(h), 0.0))

    def solve(self, g) -> np.ndarray:
        return self._factor.solve(np.asarray(g, dtype=float))

    @property
    def value(self) -> float:
        return self.problem.cone.value(self.s)

    @property
    def v(self) -> np.ndarray:
        if self._v is None:
            self._v = self.solve(self.gradient)
        return self._v

    @property
    def v_norm(self) -> float:
        """``||v(y)||_y``, which equals ``||grad f(y)||_y``."""
        return self.dual_norm(self.gradient)

    @property
    def direction_slack(self) -> np.ndarray:
        """``-A^T v(y)``, the slack direction of the predictor."""
        return -(self.problem.A.T @ self.v)

    def moved(self, direction, t: float) -> "DualPoint":
        d = np.asarray(direction, dtype=float)
        return DualPoint(self.problem, self.y + t * d, self.s - t * (self.problem.A.T @ d))


def as_point(problem: ConicProblem, y) -> DualPoint:
    if isinstance(y, DualPoint):
        return y
    if isinstance(y, PathIterate):
        return DualPoint(problem, y.y, y.s)
    return DualPoint(problem, y)


@dataclass
class PathIterate:
    """A dual iterate with its slack, penalty and proximity."""

    y: np.ndarray
    s: np.ndarray
    mu: float
    gamma: float

    @classmethod
    def from_point(cls, point: DualPoint, mu: float) -> "PathIterate":
        return cls(point.y.copy(), point.s.copy(), float(mu), proximity_gamma(point.problem, point, mu))


# -- derivatives and proximity ------------------------------------------------


def f_derivatives(problem: ConicProblem, y):
    """``(f(y), grad f(y), hess f(y))``."""
    p = as_point(problem, y)
    return p.value, p.gradient.copy(), p.hessian


def proximity_gamma(problem: ConicProblem, y, mu: float) -> float:
    """``gamma(y, mu) = ||grad f(y) - b/mu||_y``, the Newton decrement of centering."""
    if not mu > 0.0:
        raise ValueError("mu must be positive")
    p = as_point(problem, y)
    return p.dual_norm(p.gradient - problem.b / mu)


def theta(problem: ConicProblem, y) -> float:
    """``min_t ||grad f(y) - t b||_y``, distance to the nearest central point direction."""
    p = as_point(problem, y)
    zg = p._factor.half_solve(p.gradient)
    zb = p._factor.half_solve(problem.b)
    bb = zb @ zb
    if bb == 0.0:
        return float(np.linalg.norm(zg))
    r = zg - (zg @ zb) / bb * zb
    return float(np.linalg.norm(r))


# -- prediction ---------------------------------------------------------------


def predictor_direction(problem: ConicProblem, y) -> np.ndarray:
    """``v(y) = [hess f(y)]^{-1} grad f(y)``."""
    return as_point(problem, y).v.copy()


def prediction_point(problem: ConicProblem, y) -> np.ndarray:
    """``p(y) = y + v(y)``."""
    p = as_point(problem, y)
    return p.y + p.v


def predicted_slack(problem: ConicProblem, y) -> np.ndarray:
    """``s_p(y) = s(y) - A^T v(y)``."""
    p = as_point(problem, y)
    return p.s + p.direction_slack


def null_residual(problem: ConicProblem, y) -> float:
    """Size of ``A hess F_*(s) s_p(y)``, which vanishes identically.

    Measured in the local dual norm at ``y``: the Euclidean size scales with
    ``hess f(y)``, which grows like ``1/mu^2`` along the path.
    """
    p = as_point(problem, y)
    r = problem.A @ (p.slack_hessian @ (p.s + p.direction_slack))
    return p.dual_norm(r)


def prediction_identity_residual(problem: ConicProblem, y, metric=None) -> float:
    """Residual of ``p(y) = y_* + [hess f(y)]^{-1} A hess F_*(s) s_*``.

    The norm is ``||.||_metric`` for a given ``SymOperator`` (usually ``G``),
    Euclidean otherwise.
    """
    if problem.y_star is None:
        raise MissingOptimum("the identity needs a known optimum")
    p = as_point(problem, y)
    rhs = problem.y_star + p.solve(problem.A @ (p.slack_hessian @ problem.s_star))
    r = p.y + p.v - rhs
    if metric is None:
        return float(np.linalg.norm(r))
    return metric.norm(r, "primal")


def max_feasible_step(problem: ConicProblem, y) -> float:
    """``alpha_bar(y) = sup {a >= 0 : y + a v(y) in Q}``."""
    p = as_point(problem, y)
    a = problem.cone.max_step(p.s, p.direction_slack)
    if math.isinf(a) and not np.any(p.v):
        raise UnboundedStep("v(y) = 0: y is the analytic center, every step stays feasible")
    if math.isinf(a):
        raise UnboundedStep("-A^T v(y) is a recession direction of the slack cone; the optimal set is unbounded")
    return float(a)


def xi(alpha_bar: float, alpha: float) -> float:
    """Penalty division factor ``1 + a abar / (abar - a)``."""
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")
    if not alpha < alpha_bar:
        raise StepAtBoundary(f"alpha={alpha} is not below alpha_bar={alpha_bar}")
    return 1.0 + alpha * alpha_bar / (alpha_bar - alpha)


def eta(alpha_bar: float, alpha: float) -> float:
    """Next predictor trial: double while below ``abar/3``, else halve the gap to ``abar``."""
    if alpha < alpha_bar / 3.0:
        return 2.0 * alpha
    return 0.5 * (alpha + alpha_bar)


class GammaEvaluator:
    """Computes ``Gamma_mu(y, alpha)`` for many ``alpha`` at a fixed ``y``.

    The factorization of ``hess f(y)``, the direction, ``alpha_bar`` and
    ``sigma_{s(y)}(-A^T v(y))`` are computed once; each trial costs one
    gradient of the slack barrier at ``s - alpha A^T v``.
    """

    def __init__(self, problem: ConicProblem, y, mu: float):
        self.problem = problem
        self.point = as_point(problem, y)
        self.mu = float(mu)
        self.alpha_bar = max_feasible_step(problem, self.point)
        self.sigma = problem.cone.sigma_measure(self.point.s, self.point.direction_slack)

    def trial_point(self, alpha: float) -> tuple[np.ndarray, np.ndarray]:
        p = self.point
        return p.y + alpha * p.v, p.s + alpha * p.direction_slack

    def __call__(self, alpha: float) -> float:
        if not 0.0 <= alpha < self.alpha_bar * BOUNDARY_FRACTION:
            raise OutsideCone(f"trial alpha={alpha} is not strictly inside [0, {self.alpha_bar})")
        _, s_a = self.trial_point(alpha)
        grad = -(self.problem.A @ self.problem.cone.gradient(s_a))
        r = grad - xi(self.alpha_bar, alpha) / self.mu * self.problem.b
        return (1.0 + alpha * self.sigma) * self.point.dual_norm(r)

    def gamma1(self, alpha: float) -> float:
        """``||grad f(y(alpha)) - xi grad f(y)||_y``."""
        _, s_a = self.trial_point(alpha)
        grad = -(self.problem.A @ self.problem.cone.gradient(s_a))
        return self.point.dual_norm(grad - xi(self.alpha_bar, alpha) * self.point.gradient)

    def split_bound(self, alpha: float, beta: float) -> float:
        """``(1 + alpha sigma)[gamma1(alpha) + beta xi(alpha)]``, valid for ``y`` in N(mu, beta)."""
        return (1.0 + alpha * self.sigma) * (self.gamma1(alpha) + beta * xi(self.alpha_bar, alpha))


def big_gamma(problem: ConicProblem, y, mu: float, alpha: float) -> float:
    """``Gamma_mu(y, alpha) = (1 + alpha sigma) ||grad f(y + alpha v) - xi b / mu||_y``."""
    return GammaEvaluator(problem, y, mu)(alpha)


def poly_chain_bound(v_norm: float, alpha: float, beta: float) -> float:
    """Upper bound on ``Gamma`` for small steps ``alpha ||v||_y < 1`` from ``N(mu, beta)``."""
    t = alpha * v_norm
    if t >= 1.0:
        return math.inf
    return (1.0 + t) * (2.0 * t * t / (1.0 - t) + beta * (1.0 + alpha / (1.0 - t)))


# -- central path -------------------------------------------------------------


class CentralPathResiduals(NamedTuple):
    x: np.ndarray
    primal_residual: float
    gap: float
    nu_mu: float

    @property
    def gap_error(self) -> float:
        return abs(self.gap - self.nu_mu) / self.nu_mu


def primal_estimate(problem: ConicProblem, y, mu: float) -> np.ndarray:
    """``x(y, mu) = -mu [grad F_*(s) + hess F_*(s) A^T dy]`` with ``dy`` the centering Newton step.

    ``A x = b`` holds exactly, and the gap ``<c, x> - <b, y> = <s, x>``
    differs from ``nu mu`` by ``mu <grad f(y), dy>``, at most ``sqrt(nu) mu gamma``.
    """
    p = as_point(problem, y)
    dy = p.solve(p.gradient - problem.b / mu)
    return -mu * (p.slack_gradient + p.slack_hessian @ (problem.A.T @ dy))


def central_path_residuals(problem: ConicProblem, y, mu: float, x_candidate=None) -> CentralPathResiduals:
    """Primal feasibility and duality gap of ``x = -mu grad F_*(s(y))``."""
    p = as_point(problem, y)
    x = -mu * p.slack_gradient if x_candidate is None else np.asarray(x_candidate, dtype=float)
    res = float(np.linalg.norm(problem.A @ x - problem.b))
    gap = float(problem.c @ x - problem.b @ p.y)
    return CentralPathResiduals(x, res, gap, problem.nu * mu)


def kappa1(nu: float, beta: float) -> float:
    """``nu + beta (beta + sqrt nu) / (1 - beta)``: gap bound factor on N(mu, beta)."""
    return nu + beta * (beta + math.sqrt(nu)) / (1.0 - beta)
