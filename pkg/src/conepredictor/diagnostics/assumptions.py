"""Estimates of the sharpness and boundedness constants and the bounds built on them.

The metric ``B`` is the primal Hessian at the centre for ``mu = 1``,
computed as ``[hess F_*(s_1)]^{-1}``, and ``G = A B^{-1} A^T``. Both are
fixed for a problem. Checks that need exact central points use iterates
re-centered to ``gamma <= 1e-10`` and inflate their bounds by 1%.

The estimates are regional: ``gamma_d`` is a minimum over sampled points
near ``y_*`` and ``sigma_d`` a maximum over the sampled path, so bounds
built from them are consistency checks rather than certificates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ..errors import (
    CorrectorStalled,
    MissingInitialIterate,
    MissingOptimum,
    NoSamples,
    OutsideCone,
    ParameterOutOfRange,
)
from ..geometry import (
    ConicProblem,
    DualPoint,
    PathIterate,
    as_point,
    kappa1,
    max_feasible_step,
    theta,
)
from ..linalg import SymOperator, generalized_eigvalsh
from ..pathfollow import _newton_center
from .rates import loglog_slope
from .report import Report, at_least, at_most, info

CENTER_TOL = 1e-10
INFLATE = 1.01
PROBES = 64
EIGEN_DIM_LIMIT = 50
LADDER_SCALES = np.geomspace(1e-1, 1e-8, 30)
LADDER_DIRECTIONS = 8
LADDER_SEED = 0
EXCLUDE_RADIUS = 1e-10
SLOPE_MIN_SCALE = 1e-5
# bounds smaller than this are below the rounding error of p(y) - y_*
BOUND_FLOOR = 1e-12


# -- centered points ---------------------------------------------------------------


def recenter(problem: ConicProblem, point, mu: float, tol: float = CENTER_TOL, max_steps: int = 100) -> PathIterate:
    """Newton centering of ``point`` at ``mu`` to ``gamma <= tol``."""
    point = as_point(problem, point)
    point, _, lam = _newton_center(point, mu, tol, max_steps)
    return PathIterate(point.y.copy(), point.s.copy(), float(mu), lam)


def _jump(problem, it: PathIterate, mu_next: float) -> DualPoint:
    """Predictor point for a jump from ``it.mu`` to ``mu_next``.

    The step ``alpha`` solves ``xi(alpha) = mu / mu_next``, the same
    relation the method uses between step and penalty.
    """
    point = as_point(problem, it)
    ratio = it.mu / mu_next
    if ratio <= 1.0:
        return point
    abar = max_feasible_step(problem, point)
    alpha = (ratio - 1.0) * abar / (abar + ratio - 1.0)
    return point.moved(point.v, alpha)


def centered_points(problem: ConicProblem, mus, tol: float = CENTER_TOL, start=None) -> list:
    """Centered iterates at the decreasing penalties ``mus``.

    The first point is reached by damped Newton from ``start`` (default
    ``y_start``), later ones by predictor jumps and Newton. Penalties at
    which centering fails, which happens at the floating-point floor, end
    the list early.
    """
    out = []
    it = None
    for mu in mus:
        mu = float(mu)
        try:
            if it is None:
                it = recenter(problem, start if start is not None else problem.y_start, mu, tol, 200)
            else:
                it = recenter(problem, _jump(problem, it, mu), mu, tol)
        except (CorrectorStalled, OutsideCone):
            break
        out.append(it)
    return out


def trace_points(problem: ConicProblem, trace, tol: float = CENTER_TOL) -> list:
    """Re-centered iterates at every penalty of ``trace``.

    Stored iterates are used as Newton starting points when present (an
    in-memory trace); otherwise the path is followed by continuation.
    """
    out = []
    prev = None
    for rec in trace.records:
        try:
            if rec.y is not None:
                it = recenter(problem, DualPoint(problem, rec.y, rec.s), rec.mu, tol)
            elif prev is None:
                it = recenter(problem, problem.y_start, rec.mu, tol, 200)
            else:
                it = recenter(problem, _jump(problem, prev, rec.mu), rec.mu, tol)
        except (CorrectorStalled, OutsideCone):
            break
        out.append(it)
        prev = it
    return out


# -- metrics ----------------------------------------------------------------------


def build_metrics(problem: ConicProblem, trace=None) -> tuple:
    """``(B, G)`` from the iterate at ``mu = 1``.

    ``B = [hess F_*(s_1)]^{-1}`` is kept as a :class:`SymOperator` and
    ``G = A hess F_*(s_1) A^T``. With ``trace=None`` the centre is computed
    from ``y_start``.
    """
    if trace is None:
        start = problem.y_start
    else:
        first = next((r for r in trace.records if r.mu == 1.0), None)
        if first is None:
            raise MissingInitialIterate("the trace has no iterate at mu = 1")
        start = DualPoint(problem, first.y, first.s) if first.y is not None else problem.y_start
    centre = recenter(problem, start, 1.0, 1e-12, 200)
    hs = problem.cone.hessian_matrix(centre.s)
    B = SymOperator(np.linalg.inv(hs))
    G = SymOperator(problem.A @ hs @ problem.A.T)
    return B, G


def _max_pencil(m: np.ndarray, n: np.ndarray, rng=None) -> float:
    """Largest eigenvalue of the pencil ``(m, n)``, exact below the size limit."""
    if m.shape[0] <= EIGEN_DIM_LIMIT:
        return float(generalized_eigvalsh(m, n)[-1])
    rng = rng if rng is not None else np.random.default_rng(LADDER_SEED)
    best = 0.0
    for z in rng.normal(size=(PROBES, m.shape[0])):
        best = max(best, float(z @ m @ z) / float(z @ n @ z))
    return best


def operator_norms(problem: ConicProblem, B: SymOperator, G: SymOperator) -> tuple[float, float]:
    """``(||A||_{G,B}, ||b||_G)``; both are bounded by ``1`` and ``sqrt nu``."""
    A = problem.A
    m = A.T @ G.solve(A)
    a_norm = math.sqrt(max(_max_pencil(0.5 * (m + m.T), B.matrix), 0.0))
    return a_norm, G.norm(problem.b, "dual")


# -- sharpness --------------------------------------------------------------------


class GammaLadder(NamedTuple):
    scales: np.ndarray
    ratios: np.ndarray  # min ratio per scale, NaN where nothing was sampled
    estimate: float
    samples: int
    slope: float  # log-log slope of the ratio for scales down to SLOPE_MIN_SCALE

    @property
    def degenerate(self) -> bool:
        """Ratios shrink with the scale, so no positive constant is supported."""
        return self.slope > 0.5


def _feasible(problem, y) -> bool:
    return problem.cone.contains(problem.c - problem.A.T @ y)


def _edge_point(problem, y_star, t, u, w):
    """``y_* + t (u + lam w)`` with the smallest ``lam >= 0`` that is feasible."""
    if _feasible(problem, y_star + t * u):
        return y_star + t * u
    hi = 1.0 / t  # y_* + t u + w t lam moves to y_start as lam grows
    if not _feasible(problem, y_star + t * (u + hi * w)):
        return None
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _feasible(problem, y_star + t * (u + mid * w)):
            hi = mid
        else:
            lo = mid
    return y_star + t * (u + hi * w)


def gamma_d_ladder(problem: ConicProblem, G: SymOperator | None = None, scales=LADDER_SCALES,
                   directions: int = LADDER_DIRECTIONS, seed: int = LADDER_SEED) -> GammaLadder:
    """Sharpness ratios ``(f_* - <b, y>) / ||y - y_*||_G`` on a geometric ladder.

    At each scale ``t`` and for random unit directions ``u``, the sample is
    ``y_* + t u`` when feasible and otherwise the point ``y_* + t(u + lam w)``
    just inside the boundary, with ``w`` pointing at ``y_start``. Boundary
    samples are where a missing sharp maximum shows up.
    """
    if problem.y_star is None:
        raise MissingOptimum("sharpness needs a known optimum")
    if G is None:
        G = build_metrics(problem)[1]
    rng = np.random.default_rng(seed)
    y_star = problem.y_star
    w = problem.y_start - y_star
    w = w / G.norm(w, "primal")
    scales = np.asarray(scales, dtype=float)
    ratios = np.full(scales.size, np.nan)
    count = 0
    for j, t in enumerate(scales):
        best = math.inf
        for _ in range(directions):
            u = rng.normal(size=problem.m)
            u /= G.norm(u, "primal")
            y = _edge_point(problem, y_star, t, u, w)
            if y is None:
                continue
            dist = G.norm(y - y_star, "primal")
            if dist <= EXCLUDE_RADIUS:
                continue
            best = min(best, (problem.f_star - problem.b @ y) / dist)
            count += 1
        if math.isfinite(best):
            ratios[j] = best
    if count == 0:
        raise NoSamples("no strictly feasible sample away from y_*")
    ok = np.isfinite(ratios) & (ratios > 0)
    # on curved boundaries the gap is of order t^2 and drowns in rounding at
    # the fine end, so the trend is read from the coarse half
    coarse = np.flatnonzero(ok & (scales >= SLOPE_MIN_SCALE))
    slope = float(np.polyfit(np.log(scales[coarse]), np.log(ratios[coarse]), 1)[0]) if coarse.size >= 2 else 0.0
    return GammaLadder(scales, ratios, float(np.nanmin(ratios)), count, slope)


def estimate_gamma_d(problem: ConicProblem, y_star=None, G: SymOperator | None = None, samples: int = LADDER_DIRECTIONS) -> float:
    """Regional lower estimate of the sharpness constant ``gamma_d``."""
    if y_star is not None and problem.y_star is None:
        problem.y_star = np.asarray(y_star, dtype=float)
    return gamma_d_ladder(problem, G, directions=samples).estimate


# -- boundedness ------------------------------------------------------------------


class SigmaProfile(NamedTuple):
    mu: np.ndarray
    values: np.ndarray
    slope: float  # log-log slope of the values against 1/mu on the tail

    @property
    def estimate(self) -> float:
        return float(np.max(self.values))

    @property
    def diverging(self) -> bool:
        """Growth like ``1/mu`` or faster, which rules the constant out."""
        return self.slope > 0.5


def sigma_d_profile(problem: ConicProblem, points, s_star=None, B: SymOperator | None = None) -> SigmaProfile:
    """``||hess F_*(s_k) s_*||_B`` along the iterates ``points``."""
    s_star = problem.s_star if s_star is None else np.asarray(s_star, dtype=float)
    if s_star is None:
        raise MissingOptimum("boundedness needs a known optimal slack")
    if B is None:
        B = build_metrics(problem)[0]
    mus, vals = [], []
    for p in points:
        h = problem.cone.hessian_matrix(p.s) @ s_star
        mus.append(p.mu)
        vals.append(B.norm(h, "primal"))
    mus, vals = np.array(mus), np.array(vals)
    tail = (mus <= 1e-2) & (vals > 0)
    slope = float(np.polyfit(np.log(1.0 / mus[tail]), np.log(vals[tail]), 1)[0]) if tail.sum() >= 3 else 0.0
    return SigmaProfile(mus, vals, slope)


def estimate_sigma_d(problem: ConicProblem, trace, s_star=None, B: SymOperator | None = None) -> float:
    """Largest ``||hess F_*(s(y_k)) s_*||_B`` over the iterates of ``trace``."""
    points = trace if isinstance(trace, list) else trace_points(problem, trace)
    return sigma_d_profile(problem, points, s_star, B).estimate


# -- constants --------------------------------------------------------------------


class Constants(NamedTuple):
    kappa1: float
    kappa2: float
    kappa3: float
    kappa: float


def constants(nu: float, gamma_d: float, sigma_d: float, beta: float, mu: float, r: float) -> Constants:
    """``kappa_1, kappa_2, kappa_3`` and ``kappa = kappa_1 kappa_2``."""
    if not nu >= 1.0:
        raise ParameterOutOfRange("nu must be at least 1")
    if not gamma_d > 0.0:
        raise ParameterOutOfRange("gamma_d must be positive")
    if not sigma_d >= 0.0:
        raise ParameterOutOfRange("sigma_d must be nonnegative")
    if not 0.0 <= beta <= 1.0 / 9.0:
        raise ParameterOutOfRange("beta must lie in [0, 1/9]")
    if not 0.0 < mu <= 1.0:
        raise ParameterOutOfRange("mu must lie in (0, 1]")
    if not 0.0 < r < 1.0:
        raise ParameterOutOfRange("r must lie in (0, 1)")
    k1 = kappa1(nu, beta)
    k2 = (2.0 / gamma_d) * (sigma_d + 6.0 * nu**2 * beta / mu)
    k3 = k2 * (1.0 / r + 2.0 * math.sqrt(nu) / gamma_d)
    return Constants(k1, k2, k3, k1 * k2)


class LocalRate(NamedTuple):
    c0: float
    c1: float
    threshold: float  # penalties below it are in the superlinear regime
    rate_constant: float  # mu_{k+1} <= rate_constant * mu_k^{3/2}
    two_bound: float  # the earlier smallness condition 1 / (2 (kappa + 2/25))


def local_rate_constants(nu: float, gamma_d: float, sigma_d: float, beta_prime: float = 1.0 / 6.0) -> LocalRate:
    """Constants of the superlinear phase for the neighbourhoods ``beta = mu/25``."""
    if not gamma_d > 0.0 or not sigma_d >= 0.0 or not nu >= 1.0:
        raise ParameterOutOfRange("need nu >= 1, gamma_d > 0, sigma_d >= 0")
    sq = math.sqrt(nu)
    k1 = kappa1(nu, 1.0 / 25.0)
    k2 = (2.0 / gamma_d) * (sigma_d + 6.0 * nu**2 / 25.0)
    k = k1 * k2
    c0 = k * sq + (2.0 * k1 / gamma_d) * (
        sigma_d + 6.0 * nu**2 / 25.0 + 2.0 * k * nu * (1.0 + 2.0 * sq) * (24.0 / 25.0) / (23.0 / 25.0)
    )
    c1 = beta_prime / ((1.0 + 2.0 * sq) * (c0 + 7.0 / 225.0))
    threshold = beta_prime / ((1.0 + 2.0 * sq) * (9.0 * c0 + 7.0 / 25.0))
    return LocalRate(c0, c1, threshold, 9.0 / math.sqrt(c1), 1.0 / (2.0 * (k + 2.0 / 25.0)))


# -- bounds at centered points -------------------------------------------------------


def primal_point(problem: ConicProblem, it: PathIterate) -> np.ndarray:
    """``x_mu = -mu grad F_*(s_mu)``."""
    return -it.mu * problem.cone.gradient(it.s)


def set_bound_ratio(problem: ConicProblem, points) -> float:
    """``max ||x_{mu_1}||_{x_{mu_0}} / nu`` and the slack analogue over ordered pairs."""
    worst = 0.0
    nu = problem.nu
    for i, p0 in enumerate(points):
        h0 = problem.cone.hessian_matrix(p0.s)
        prim = np.linalg.inv(h0) / p0.mu**2  # hess F(x_{mu_0})
        for p1 in points[i:]:
            x1 = primal_point(problem, p1)
            worst = max(worst, math.sqrt(x1 @ prim @ x1) / nu, math.sqrt(p1.s @ h0 @ p1.s) / nu)
    return worst


def hessian_sandwich(problem: ConicProblem, B: SymOperator, points) -> tuple[float, float]:
    """Worst relative margins of ``B/(4 nu^2) <= hess F(x_mu) <= 4 nu^2 B / mu^2``.

    Returns ``(lower, upper)`` margins; both are nonnegative when the bounds
    hold. The dual statement is the inverse of the primal one and gives the
    same numbers.
    """
    nu = problem.nu
    binv = np.linalg.inv(B.matrix)
    lo = hi = math.inf
    for p in points:
        # eigenvalues of (hess F(x_mu), B) are reciprocals of those of (mu^2 hess F_*(s_mu), B^{-1})
        lam = 1.0 / generalized_eigvalsh(p.mu**2 * problem.cone.hessian_matrix(p.s), binv)[::-1]
        lo = min(lo, lam[0] * 4.0 * nu**2 - 1.0)
        hi = min(hi, 1.0 - lam[-1] * p.mu**2 / (4.0 * nu**2))
    return lo, hi


def d2_ratio(problem: ConicProblem, B: SymOperator, points) -> float:
    """``max ||hess F_*(s_mu)||_B mu^2 / (4 nu^2)``; at most one."""
    binv = np.linalg.inv(B.matrix)
    worst = 0.0
    for p in points:
        h = problem.cone.hessian_matrix(p.s)
        lam = _max_pencil(h @ binv @ h, binv)
        worst = max(worst, math.sqrt(lam) * p.mu**2 / (4.0 * problem.nu**2))
    return worst


def bar_alpha_margins(problem: ConicProblem, points, kappa: float, beta_coefficient: float = 1.0 / 25.0) -> tuple:
    """Slack in ``1 - abar <= k mu/(1 + k mu)`` and ``abar - 1 <= k mu/(1 - k mu - 2 beta)``.

    Only iterates with ``mu < (1 - 2 beta)/kappa`` take part; returns
    ``(lower margin, upper margin, count)``, with the margins scaled by the
    bounds so that nonnegative means the bounds hold.
    """
    lo = hi = math.inf
    count = 0
    for p in points:
        beta = beta_coefficient * p.mu
        if not p.mu < (1.0 - 2.0 * beta) / kappa:
            continue
        abar = max_feasible_step(problem, p)
        km = kappa * p.mu
        lo = min(lo, 1.0 - (1.0 - abar) / (km / (1.0 + km)))
        hi = min(hi, 1.0 - (abar - 1.0) / (km / (1.0 - km - 2.0 * beta)))
        count += 1
    return lo, hi, count


def xrate_ratio(problem: ConicProblem, B: SymOperator, points, sigma_p: float) -> float:
    """``max ||x_mu - x_*||_B / (sigma_p mu)``."""
    if problem.x_star is None:
        raise MissingOptimum("the primal rate needs x_*")
    return max(B.norm(primal_point(problem, p) - problem.x_star, "primal") / (sigma_p * p.mu) for p in points)


def prediction_bound_ratio(problem: ConicProblem, G: SymOperator, points, gamma_d: float, sigma_d: float) -> float:
    """``max ||p(y_mu) - y_*||_G / (4 sigma_d nu^2 mu^2 / gamma_d^2)``.

    ``y_mu - mu y'_mu`` equals the prediction point ``p(y_mu)`` at exact
    central points.
    """
    if problem.y_star is None:
        raise MissingOptimum("needs y_*")
    worst = 0.0
    for p in points:
        bound = 4.0 * sigma_d * problem.nu**2 * p.mu**2 / gamma_d**2
        if bound <= BOUND_FLOOR:
            continue
        pt = as_point(problem, p)
        worst = max(worst, G.norm(pt.y + pt.v - problem.y_star, "primal") / bound)
    return worst


def prediction_quadratic(problem: ConicProblem, G: SymOperator, points, floor: float = 1e-12):
    """Distances ``(||y_k - y_*||_G, ||p(y_k) - y_*||_G)`` above ``floor``."""
    if problem.y_star is None:
        raise MissingOptimum("needs y_*")
    d, e = [], []
    for p in points:
        pt = as_point(problem, p)
        err = G.norm(pt.y + pt.v - problem.y_star, "primal")
        if err > floor:
            d.append(G.norm(pt.y - problem.y_star, "primal"))
            e.append(err)
    return np.array(d), np.array(e)


def dest_ratio(problem: ConicProblem, G: SymOperator, points, gamma_d: float, sigma_d: float) -> float:
    """``max ||p - y_*||_G / ((4/gamma_d^2)(sigma_d + 6 nu^2 gamma/mu) <b, y_* - y>^2)``."""
    worst = 0.0
    nu = problem.nu
    for p in points:
        pt = as_point(problem, p)
        gap = problem.f_star - problem.b @ pt.y
        if gap <= 0.0:
            continue
        bound = 4.0 / gamma_d**2 * (sigma_d + 6.0 * nu**2 * p.gamma / p.mu) * gap**2
        if bound <= BOUND_FLOOR:
            continue
        worst = max(worst, G.norm(pt.y + pt.v - problem.y_star, "primal") / bound)
    return worst


def feasible_step_check(problem: ConicProblem, it: PathIterate, kappa2: float, kappa3: float, r: float = 0.5) -> tuple:
    """Whether ``y(alpha_hat)`` is feasible and the quadratic gap bound holds.

    ``alpha_hat = r / (r + kappa2 (f_* - <b, y>))``; returns
    ``(feasible, gap after / (kappa3 gap^2))``. Feasibility along the ray is
    ``alpha_hat < alpha_bar(y)``, which avoids testing slacks of rounding size.
    """
    pt = as_point(problem, it)
    gap = problem.f_star - problem.b @ pt.y
    ahat = r / (r + kappa2 * gap)
    feasible = bool(ahat < max_feasible_step(problem, pt))
    bound = kappa3 * gap**2
    ratio = (problem.f_star - problem.b @ (pt.y + ahat * pt.v)) / bound if bound > BOUND_FLOOR else 0.0
    return feasible, ratio


def maxrep_mismatches(betas, grid: int = 60, boundary_tol: float = 1e-9) -> int:
    """Disagreements between ``theta(y) <= beta`` and the ellipse on a disc grid.

    The ellipse is ``y_1^2 + (2 - beta^2)/beta^2 y_2^2 <= 1``. Grid points
    within ``boundary_tol`` of either boundary are skipped.
    """
    from ..generators import disc2d

    problem = disc2d()
    pts = np.linspace(-0.99, 0.99, grid)
    bad = 0
    for y1 in pts:
        for y2 in pts:
            y = np.array([y1, y2])
            if y @ y >= 0.999**2:
                continue
            th2 = theta(problem, y) ** 2
            for beta in betas:
                ell = y1**2 + (2.0 - beta**2) / beta**2 * y2**2 - 1.0
                if abs(ell) <= boundary_tol or abs(th2 - beta**2) <= boundary_tol:
                    continue
                bad += (th2 <= beta**2) != (ell <= 0.0)
    return int(bad)


# -- report -------------------------------------------------------------------------


@dataclass
class AssumptionReport:
    gamma_d_estimate: float
    sigma_d_estimate: float
    sample_count: int
    B_metric: SymOperator
    G_metric: SymOperator
    notes: list = field(default_factory=list)
    report: Report = field(default_factory=Report)


def assess(problem: ConicProblem, trace, r: float = 0.5) -> AssumptionReport:
    """Estimate the constants on ``problem`` and check the bounds along ``trace``."""
    rep = Report()
    notes = []
    B, G = build_metrics(problem, trace)
    a_norm, b_norm = operator_norms(problem, B, G)
    rep.add(at_most("A_norm_GB", a_norm, 1.0 + 1e-8))
    rep.add(at_most("b_norm_G", b_norm, math.sqrt(problem.nu) * (1.0 + 1e-8)))
    points = trace_points(problem, trace)
    if len(points) < len(trace.records):
        notes.append(f"centering stopped at mu={trace.records[len(points)].mu:.3e} (floating-point floor)")
    rep.add(info("centered_points", len(points)))
    if problem.cone.homogeneous and len(points) >= 2:
        rep.add(at_most("set_bound", set_bound_ratio(problem, points), INFLATE))
        lo, hi = hessian_sandwich(problem, B, points)
        rep.add(at_least("hess_sandwich_lower", lo, -0.01))
        rep.add(at_least("hess_sandwich_upper", hi, -0.01))
        rep.add(at_most("d2_bound", d2_ratio(problem, B, points), 1.05))
    if problem.y_star is None:
        notes.append("no known optimum: gamma_d and sigma_d not estimated")
        return AssumptionReport(math.nan, math.nan, 0, B, G, notes, rep)

    ladder = gamma_d_ladder(problem, G)
    gamma_d = ladder.estimate
    notes.append("gamma_d is a regional lower estimate")
    rep.add(info("gamma_d_estimate", gamma_d))
    rep.add(info("gamma_d_slope", ladder.slope))
    rep.add(info("gamma_d_degenerate", ladder.degenerate))
    prof = sigma_d_profile(problem, points, B=B)
    sigma_d = prof.estimate
    rep.add(info("sigma_d_estimate", sigma_d))
    rep.add(info("sigma_d_slope", prof.slope))
    rep.add(info("sigma_d_diverging", prof.diverging))
    if not problem.cone.homogeneous:
        notes.append("the slack set is not a cone: bound checks skipped")
        return AssumptionReport(gamma_d, sigma_d, ladder.samples, B, G, notes, rep)
    if ladder.degenerate or prof.diverging or gamma_d <= 0.0:
        notes.append("assumptions look violated: bound checks skipped")
        return AssumptionReport(gamma_d, sigma_d, ladder.samples, B, G, notes, rep)

    nu = problem.nu
    rate = local_rate_constants(nu, gamma_d, sigma_d, trace.config.beta_prime)
    rep.add(info("c0", rate.c0))
    rep.add(info("c1", rate.c1))
    rep.add(info("superlinear_threshold", rate.threshold))
    rep.add(info("rate_constant", rate.rate_constant))
    k = constants(nu, gamma_d, sigma_d, 1.0 / 25.0, 1.0, r)
    for name in k._fields:
        rep.add(info(name, getattr(k, name)))
    lo, hi, count = bar_alpha_margins(problem, points, k.kappa)
    rep.add(info("bar_alpha_points", count))
    if count:
        rep.add(at_least("bar_alpha_lower", lo, 0.0))
        rep.add(at_least("bar_alpha_upper", hi, 0.0))
    rep.add(at_most("bound_yp", prediction_bound_ratio(problem, G, points, gamma_d, sigma_d), INFLATE))
    rep.add(at_most("dest", dest_ratio(problem, G, points, gamma_d, sigma_d), INFLATE))
    if problem.x_star is not None and problem.cone.homogeneous:
        sigma_p = sigma_d * (1.0 + 16.0 * nu**4 / gamma_d**2)
        rep.add(at_most("x_rate", xrate_ratio(problem, B, points, sigma_p), INFLATE))
    feas, quad = True, 0.0
    for p in points:
        kp = constants(nu, gamma_d, sigma_d, min(max(p.gamma, 0.0), 1.0 / 9.0), p.mu, r)
        f, q = feasible_step_check(problem, p, kp.kappa2, kp.kappa3, r)
        feas &= f
        quad = max(quad, q)
    rep.add(at_least("feasible_step", float(feas), 1.0))
    rep.add(at_most("feasible_step_gap", quad, INFLATE))
    d, e = prediction_quadratic(problem, G, [p for p in points if p.mu <= 1e-2])
    if d.size >= 3:
        rep.add(info("prediction_slope", loglog_slope(d, e)))
    return AssumptionReport(gamma_d, sigma_d, ladder.samples, B, G, notes, rep)
