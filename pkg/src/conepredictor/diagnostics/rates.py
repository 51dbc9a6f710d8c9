"""Rate checks on penalty sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import WindowTooShort
from ..geometry import xi

TAIL_MU_MAX = 1e-4
TAIL_MU_FLOOR = 1e-12


def _mus(trace) -> np.ndarray:
    if hasattr(trace, "mu"):
        return np.asarray(trace.mu, dtype=float)
    return np.asarray(trace, dtype=float)


def linear_rate_factor(nu: float) -> float:
    """Guaranteed per-iteration factor ``1 / (1 + 1/(6 sqrt nu))``."""
    return 1.0 / (1.0 + 1.0 / (6.0 * math.sqrt(nu)))


def check_linear_rate(trace, nu: float, slack: float = 1e-12) -> np.ndarray:
    """Flag per step: ``mu_{k+1} <= mu_k / (1 + 1/(6 sqrt nu)) + slack``."""
    mu = _mus(trace)
    if mu.size < 2:
        raise WindowTooShort("need at least two penalty values")
    return mu[1:] <= linear_rate_factor(nu) * mu[:-1] + slack


@dataclass
class RateReport:
    """Least-squares fit of ``log mu_{k+1} = p log mu_k + log C`` over a tail window."""

    linear_rate_ok: np.ndarray
    tail_exponent: float
    tail_constant: float
    window: tuple  # (first, last) indices into the penalty sequence, inclusive

    @property
    def points(self) -> int:
        return self.window[1] - self.window[0] + 1


def tail_window(trace, mu_max: float = TAIL_MU_MAX, mu_floor: float = TAIL_MU_FLOOR) -> tuple:
    """Indices ``(first, last)`` of the trailing run of penalties in ``[mu_floor, mu_max]``."""
    mu = _mus(trace)
    inside = (mu <= mu_max) & (mu >= mu_floor)
    idx = np.flatnonzero(inside)
    if idx.size == 0:
        return (0, -1)
    last = int(idx[-1])
    first = last
    while first - 1 >= 0 and inside[first - 1]:
        first -= 1
    return (first, last)


def fit_tail_exponent(trace, window=None, nu: float | None = None, min_points: int = 4) -> RateReport:
    """Fit the superlinear law on the tail.

    ``window`` is either the number of trailing penalty values to use or an
    explicit ``(first, last)`` index pair; by default the trailing run of
    values in ``[1e-12, 1e-4]`` is used. At least ``min_points`` values are
    required.
    """
    mu = _mus(trace)
    if window is None:
        first, last = tail_window(mu)
    elif isinstance(window, (tuple, list)):
        first, last = int(window[0]), int(window[1])
    else:
        last = mu.size - 1
        first = last - int(window) + 1
    npts = last - first + 1
    if first < 0 or npts < min_points:
        raise WindowTooShort(f"tail window has {max(npts, 0)} points, need {min_points}")
    seg = np.log(mu[first : last + 1])
    x, y = seg[:-1], seg[1:]
    slope, intercept = np.polyfit(x, y, 1)
    flags = check_linear_rate(mu, nu) if nu is not None else np.array([], dtype=bool)
    return RateReport(flags, float(slope), float(math.exp(intercept)), (first, last))


def loglog_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    x = np.log(np.asarray(x, dtype=float))
    y = np.log(np.asarray(y, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def xi_equation_root(c0: float, nu: float, beta_prime: float, mu: float) -> float:
    """Positive root of ``c0 xi^2 + (1 + 2 xi)/25 = beta' / ((1 + 2 sqrt nu) mu)``."""
    if min(c0, nu, beta_prime, mu) <= 0.0:
        raise ValueError("all inputs must be positive")
    rhs = beta_prime / ((1.0 + 2.0 * math.sqrt(nu)) * mu)
    a, b, c = c0, 2.0 / 25.0, 1.0 / 25.0 - rhs
    if c >= 0.0:
        raise ValueError(f"no positive root: right-hand side {rhs:.3e} is not above 1/25")
    # the product of the roots is negative; take the positive one without cancellation
    return (-2.0 * c) / (b + math.sqrt(b * b - 4.0 * a * c))


def trial_budget(trace) -> tuple[int, float]:
    """Predictor evaluations used and the budget ``N (2 + log2(nu)/2) - log2 mu_N``."""
    recs = trace.records[1:]
    used = sum(len(r.trials) for r in recs)
    n = len(recs)
    budget = n * (2.0 + 0.5 * math.log2(trace.nu)) - math.log2(trace.records[-1].mu)
    return used, budget


def predictor_growth_violations(trace, tol: float = 1e-12) -> list:
    """Trials where ``xi(alpha_{k,i}) < 1 + alpha_{k,0} 2^i``.

    Returns ``(k, i, xi, bound)`` tuples; an empty list means every search
    in the trace grew the penalty factor at least geometrically.
    """
    bad = []
    for rec in trace.records[1:]:
        for i, (a, _) in enumerate(rec.trials):
            val = xi(rec.alpha_bar, a)
            bound = 1.0 + rec.alpha0 * 2.0**i
            if val < bound * (1.0 - tol):
                bad.append((rec.k, i, val, bound))
    return bad


def initial_step_failures(trace, level: float | None = None) -> list:
    """Indices ``k`` whose first predictor trial had ``Gamma > beta'``."""
    level = trace.config.beta_prime if level is None else level
    return [r.k for r in trace.records[1:] if r.trials and not r.trials[0][1] <= level]
