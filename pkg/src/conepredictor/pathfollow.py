"""Dual predictor-corrector path following for barriers with negative curvature.

Outer iteration ``k`` at ``y_k in N(mu_k, mu_k/25)``:

a. ``alpha_bar_k``, the distance to the boundary along ``v(y_k)``;
b. trial steps ``alpha_{k,0} = min(1, 1/||v||_y)/6`` then ``alpha <- eta(alpha)``,
   keeping the last trial with ``Gamma_mu(y_k, alpha) <= beta'``;
c. ``p_k = y_k + alpha_k v(y_k)`` and ``mu_{k+1} = mu_k / xi(alpha_k)``;
d. Newton centering from ``p_k`` into ``N(mu_{k+1}, mu_{k+1}/25)``.

The loop stops once ``mu_k <= epsilon / nu``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import CorrectorStalled, InitialStepRejected, IterationLimit, OutsideCone, ParameterOutOfRange
from .geometry import (
    BOUNDARY_FRACTION,
    ConicProblem,
    DualPoint,
    GammaEvaluator,
    PathIterate,
    eta,
    kappa1,
    xi,
)

# Newton steps are damped by 1/(1 + lambda) above this decrement
FULL_STEP_DECREMENT = 0.25

TRACE_COLUMNS = (
    "k",
    "mu",
    "alpha_bar",
    "alpha",
    "i_k",
    "gamma_pre",
    "gamma_post",
    "corrector_steps",
    "dual_obj",
    "gap_bound",
)


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances of the method.

    Parameters
    ----------
    epsilon : float
        Target accuracy; the run stops once ``mu <= epsilon / nu``.
    beta_coefficient : float
        Neighborhood size per unit of ``mu``; ``beta_k = beta_coefficient * mu_k``.
    beta_prime : float
        Acceptance level for ``Gamma`` in the predictor search.
    corrector_tolerance_slack : float
        The corrector aims at this fraction of ``beta_k``.
    """

    epsilon: float = 1e-8
    beta_coefficient: float = 1.0 / 25.0
    beta_prime: float = 1.0 / 6.0
    corrector_tolerance_slack: float = 0.9
    max_outer_iterations: int = 200
    max_corrector_steps: int = 50
    max_predictor_trials: int = 200

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ParameterOutOfRange("epsilon must be positive")
        if not 0.0 < self.beta_coefficient <= 1.0 / 25.0:
            raise ParameterOutOfRange("beta_coefficient must lie in (0, 1/25]")
        if not 0.0 < self.beta_prime <= 1.0 / 6.0:
            raise ParameterOutOfRange("beta_prime must lie in (0, 1/6]")
        if not 0.0 < self.corrector_tolerance_slack <= 1.0:
            raise ParameterOutOfRange("corrector_tolerance_slack must lie in (0, 1]")
        for name in ("max_outer_iterations", "max_corrector_steps", "max_predictor_trials"):
            if getattr(self, name) < 1:
                raise ParameterOutOfRange(f"{name} must be at least 1")

    def beta(self, mu: float) -> float:
        return self.beta_coefficient * mu

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class IterateRecord:
    """One row of the trace.

    Row 0 is the initial centering at ``mu = 1``; its step fields are NaN.
    Row ``k >= 1`` describes the outer iteration that produced ``y_k``: the
    step fields refer to the predictor taken from ``y_{k-1}``.
    """

    k: int
    mu: float
    alpha_bar: float
    alpha: float
    i_k: int
    gamma_pre: float
    gamma_post: float
    corrector_steps: int
    dual_obj: float
    gap_bound: float
    y: np.ndarray | None = None
    s: np.ndarray | None = None
    alpha0: float = math.nan
    trials: list = field(default_factory=list)  # (alpha, Gamma) pairs, last one may fail
    fallbacks: int = 0

    def row(self) -> tuple:
        return tuple(getattr(self, c) for c in TRACE_COLUMNS)


@dataclass
class ConvergenceTrace:
    records: list
    nu: float
    config: SolverConfig
    problem_name: str = ""
    converged: bool = False

    def __len__(self):
        return len(self.records)

    @property
    def mu(self) -> np.ndarray:
        return np.array([r.mu for r in self.records])

    @property
    def final(self) -> IterateRecord:
        return self.records[-1]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    @property
    def total_trials(self) -> int:
        return int(sum(r.i_k + 2 for r in self.records[1:]))


# -- centering ------------------------------------------------------------------


def _newton_center(point: DualPoint, mu: float, target: float, max_steps: int):
    """Damped Newton on ``f(y) - <b, y>/mu`` until the decrement is ``<= target``."""
    b = point.problem.b
    steps = 0
    while True:
        g = point.gradient - b / mu
        lam = point.dual_norm(g)
        if lam <= target:
            return point, steps, lam
        if steps >= max_steps:
            raise CorrectorStalled(
                f"Newton decrement {lam:.3e} still above {target:.3e} after {steps} steps at mu={mu:.3e}"
            )
        t = 1.0 / (1.0 + lam) if lam > FULL_STEP_DECREMENT else 1.0
        point = point.moved(-point.solve(g), t)
        steps += 1


def initialize(problem: ConicProblem, config: SolverConfig | None = None) -> PathIterate:
    """A point of ``N(1, beta_coefficient)`` reached from ``y_start`` by damped Newton."""
    it, _ = _initialize(problem, config or SolverConfig())
    return it


def _initialize(problem, config):
    point = DualPoint(problem, problem.y_start)
    beta0 = config.beta(1.0)
    point, steps, lam = _newton_center(
        point, 1.0, beta0 if _gamma(point, 1.0) <= beta0 else config.corrector_tolerance_slack * beta0,
        config.max_corrector_steps,
    )
    return PathIterate(point.y.copy(), point.s.copy(), 1.0, lam), steps


def _gamma(point, mu):
    return point.dual_norm(point.gradient - point.problem.b / mu)


def corrector(problem: ConicProblem, y_pred, mu: float, beta_target: float, config: SolverConfig | None = None):
    """Newton centering from ``y_pred`` into ``N(mu, beta_target)``.

    Returns the new iterate and the number of Newton steps.
    """
    config = config or SolverConfig()
    if isinstance(y_pred, PathIterate):
        point = DualPoint(problem, y_pred.y, y_pred.s)
    elif isinstance(y_pred, DualPoint):
        point = y_pred
    else:
        point = DualPoint(problem, y_pred)
    point, steps, lam = _newton_center(point, mu, beta_target, config.max_corrector_steps)
    return PathIterate(point.y.copy(), point.s.copy(), float(mu), lam), steps


# -- predictor ------------------------------------------------------------------


@dataclass
class SearchResult:
    alpha: float
    i: int
    alpha_bar: float
    alpha0: float
    trials: list
    evaluator: GammaEvaluator
    level: float

    @property
    def passing(self) -> list:
        """Accepted trial steps, in increasing order."""
        return [a for a, g in self.trials if g <= self.level]


def predictor_search(problem: ConicProblem, iterate, config: SolverConfig | None = None) -> SearchResult:
    """Run the ``eta`` recurrence and keep the last trial before the first failure."""
    config = config or SolverConfig()
    ev = GammaEvaluator(problem, iterate, iterate.mu)
    abar = ev.alpha_bar
    alpha0 = min(1.0, 1.0 / ev.point.v_norm) / 6.0 if ev.point.v_norm > 0 else 1.0 / 6.0
    g0 = ev(alpha0)
    trials = [(alpha0, g0)]
    if not g0 <= config.beta_prime:
        raise InitialStepRejected(
            f"Gamma at the initial step alpha={alpha0:.3e} is {g0:.3e} > {config.beta_prime:.3e}"
        )
    alpha, i = alpha0, 0
    while len(trials) < config.max_predictor_trials:
        nxt = eta(abar, alpha)
        if not nxt < abar * BOUNDARY_FRACTION or nxt == alpha:
            break
        try:
            g = ev(nxt)
        except OutsideCone:
            g = math.inf
        trials.append((nxt, g))
        if not g <= config.beta_prime:
            break
        alpha, i = nxt, i + 1
    return SearchResult(alpha, i, abar, alpha0, trials, ev, config.beta_prime)


# -- driver ---------------------------------------------------------------------


def solve(problem: ConicProblem, config: SolverConfig | None = None) -> ConvergenceTrace:
    """Run the method; returns the full trace.

    Raises
    ------
    IterationLimit
        When ``max_outer_iterations`` is exhausted; the partial trace is
        attached as ``exc.trace``. Other solver errors get the same attribute.
    """
    config = config or SolverConfig()
    nu = problem.nu
    trace = ConvergenceTrace([], nu, config, problem.name)
    try:
        _run(problem, config, trace)
    except Exception as exc:  # attach the partial trace to every failure
        if getattr(exc, "trace", None) is None:
            try:
                exc.trace = trace
            except AttributeError:
                pass
        raise
    return trace


def _run(problem, config, trace):
    nu = problem.nu
    start = DualPoint(problem, problem.y_start)
    gamma_start = _gamma(start, 1.0)
    it, steps = _initialize(problem, config)
    trace.records.append(
        IterateRecord(
            0, 1.0, math.nan, math.nan, 0, gamma_start, it.gamma, steps,
            float(problem.b @ it.y), kappa1(nu, config.beta(1.0)), it.y, it.s,
        )
    )
    stop = config.epsilon / nu
    k = 0
    while it.mu > stop:
        if k >= config.max_outer_iterations:
            raise IterationLimit(f"no convergence after {k} outer iterations (mu={it.mu:.3e})", trace)
        search = predictor_search(problem, it, config)
        ev = search.evaluator
        candidates = [(search.i - j, a) for j, a in enumerate(reversed(search.passing))]
        last_error = None
        for fallbacks, (i_used, alpha) in enumerate(candidates):
            mu_next = it.mu / xi(search.alpha_bar, alpha)
            start = ev.point.moved(ev.point.v, alpha)
            gamma_pre = _gamma(start, mu_next)
            target = config.corrector_tolerance_slack * config.beta(mu_next)
            try:
                point, steps, lam = _newton_center(start, mu_next, target, config.max_corrector_steps)
            except (CorrectorStalled, OutsideCone) as exc:
                last_error = exc
                continue
            break
        else:
            raise CorrectorStalled(f"iteration {k + 1}: every passing predictor step stalled ({last_error})")
        k += 1
        it = PathIterate(point.y.copy(), point.s.copy(), mu_next, lam)
        trace.records.append(
            IterateRecord(
                k, mu_next, search.alpha_bar, alpha, i_used, gamma_pre, lam, steps,
                float(problem.b @ it.y), kappa1(nu, config.beta(mu_next)) * mu_next, it.y, it.s,
                alpha0=search.alpha0, trials=search.trials, fallbacks=fallbacks,
            )
        )
    trace.converged = True
    return trace
