import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conepredictor import ConicProblem, SolverConfig, generate_example, make_cone, solve
from conepredictor.diagnostics import (
    ReducedBarrier,
    assess,
    build_metrics,
    check_lemma_ell,
    check_linear_rate,
    check_step_hessian,
    constants,
    estimate_gamma_d,
    estimate_sigma_d,
    fd_check,
    fit_tail_exponent,
    gamma_d_ladder,
    identity_suite,
    linear_rate_factor,
    local_rate_constants,
    maxrep_mismatches,
    operator_norms,
    parse_report,
    recenter,
    xi_equation_root,
)
from conepredictor.diagnostics.report import Report, at_least, at_most, info
from conepredictor.errors import (
    HypothesisNotSatisfied,
    MissingInitialIterate,
    MissingOptimum,
    NoSamples,
    OutsideCone,
    ParameterOutOfRange,
    WindowTooShort,
)
from conepredictor.geometry import kappa1
from conepredictor.linalg import SymOperator
from conepredictor.pathfollow import ConvergenceTrace, IterateRecord


def _trace(mus, nu=4.0):
    recs = [IterateRecord(k, m, 1.0, 0.5, 0, 0.0, 0.0, 0, 0.0, 0.0) for k, m in enumerate(mus)]
    return ConvergenceTrace(recs, nu, SolverConfig())


# -- barrier checks -----------------------------------------------------------------


@pytest.mark.parametrize(
    "spec", ["orthant 4", "psd 3", "soc 4", "hankel_poly 2", "disc2d", "parabola2d", ["orthant 2", "psd 2"]]
)
def test_identity_suite_passes(spec):
    rep = identity_suite(spec, samples=25, seed=3)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("order, limit", [("gradient", 1e-6), ("hessian", 1e-5), ("third", 1e-4)])
@pytest.mark.parametrize("spec", ["orthant 3", "psd 3"])
def test_fd_check_thresholds(spec, order, limit):
    cone = make_cone(spec)
    rng = np.random.default_rng(0)
    assert fd_check(cone, cone.random_interior(rng), order, rng) <= limit


def test_fd_check_detects_a_wrong_gradient():
    class Broken(type(make_cone("orthant 2"))):
        def gradient(self, x):
            return 1.01 * super().gradient(x)

    cone = Broken(2)
    assert fd_check(cone, np.array([1.0, 2.0]), "gradient") > 1e-3


def test_fd_check_outside_point():
    with pytest.raises(OutsideCone):
        fd_check(make_cone("orthant 2"), np.array([-1.0, 1.0]), "gradient")


def test_reduced_barrier_matches_differences():
    problem, _ = generate_example("sharp_sdp", (3,), 2)
    red = ReducedBarrier(problem)
    rng = np.random.default_rng(1)
    for order, limit in [("gradient", 1e-6), ("hessian", 1e-5), ("third", 1e-4)]:
        assert fd_check(red, problem.y_start, order, rng) <= limit


def test_lemma_ell_examples():
    x = np.array([1.0, 1.0])
    cone = make_cone("orthant 2")
    assert check_lemma_ell(cone, x, x, cone.hessian_matrix(x))
    # <grad F(x), u - x> = -sum(u_i / x_i) + nu is nonnegative only for u no farther out than x
    with pytest.raises(HypothesisNotSatisfied):
        check_lemma_ell(cone, x, np.array([2.0, 2.0]))
    assert check_lemma_ell(cone, np.array([2.0, 2.0]), x)
    assert check_step_hessian(cone, x, np.array([2.0, 2.0]))


def test_lemma_ell_refuses_bad_hypotheses():
    cone = make_cone("orthant 2")
    x = np.array([1.0, 1.0])
    with pytest.raises(HypothesisNotSatisfied):
        check_lemma_ell(cone, x, np.array([3.0, 0.5]))  # <grad F(x), u - x> < 0
    with pytest.raises(HypothesisNotSatisfied):
        check_lemma_ell(cone, x, np.array([0.5, 0.5]), 0.01 * np.eye(2))  # ellipsoid too large


@pytest.mark.parametrize("spec", ["orthant 3", "psd 2", "soc 3", "hankel_poly 1"])
@given(seed=st.integers(0, 10_000))
def test_dikin_corollary_randomized(spec, seed):
    cone = make_cone(spec)
    rng = np.random.default_rng(seed)
    x, u = cone.random_interior(rng), cone.random_interior(rng)
    g = cone.gradient(x)
    if g @ (u - x) < 0:  # shrink u toward the apex until <-grad F(x), u> <= nu
        u = u * (0.99 * cone.nu / float(-g @ u))
    assert check_lemma_ell(cone, x, u, rng=rng)
    assert check_step_hessian(cone, x, u)


# -- rates -----------------------------------------------------------------------------


def test_linear_rate_example():
    assert linear_rate_factor(4.0) == pytest.approx(1.0 / (1.0 + 1.0 / 12.0))
    assert check_linear_rate([1.0, 0.5, 0.2], 4.0).all()
    assert not check_linear_rate([1.0, 1.0, 1.0], 4.0).any()
    with pytest.raises(WindowTooShort):
        check_linear_rate([1.0], 4.0)


def test_tail_exponent_of_exact_laws():
    mus = [1e-2]
    while mus[-1] ** 1.5 >= 1e-12:
        mus.append(mus[-1] ** 1.5)
    assert fit_tail_exponent(_trace(mus), len(mus)).tail_exponent == pytest.approx(1.5, abs=1e-6)
    halving = [0.5**k for k in range(30)]
    fit = fit_tail_exponent(_trace(halving), 10)
    assert fit.tail_exponent == pytest.approx(1.0, abs=1e-6)
    assert fit.tail_constant == pytest.approx(0.5, rel=1e-6)


def test_tail_window_too_short():
    with pytest.raises(WindowTooShort):
        fit_tail_exponent(_trace([1.0, 1e-5, 1e-8, 1e-13]))


def test_xi_root():
    root = xi_equation_root(1.0, 1.0, 3.0 * 4.0, 1.0)  # right-hand side 4
    assert 1.0 * root**2 + (1.0 + 2.0 * root) / 25.0 == pytest.approx(4.0, rel=1e-12)
    big = xi_equation_root(2.0, 1.0, 3.0, 1e-12)
    assert big == pytest.approx(math.sqrt((1.0 / 1e-12) / 2.0), rel=1e-5)
    with pytest.raises(ValueError):
        xi_equation_root(1.0, 1.0, 1e-9, 1.0)


@given(st.floats(1e-3, 1e3), st.floats(1.0, 100.0), st.floats(1e-12, 1e-3))
def test_xi_root_residual(c0, nu, mu):
    bp = 1.0 / 6.0
    rhs = bp / ((1.0 + 2.0 * math.sqrt(nu)) * mu)
    if rhs <= 1.0 / 25.0:
        return
    r = xi_equation_root(c0, nu, bp, mu)
    assert r > 0 and abs(c0 * r * r + (1 + 2 * r) / 25.0 - rhs) <= 1e-12 * rhs


# -- constants ------------------------------------------------------------------------------


def test_constants_example():
    k = constants(2.0, 1.0, 1.0, 1.0 / 25.0, 1.0, 0.5)
    assert k.kappa1 == pytest.approx(2.0 + (1 / 25) * (1 / 25 + math.sqrt(2.0)) / (24 / 25), rel=1e-15)
    # (2/gamma_d)(sigma_d + 6 nu^2 beta / mu) = 2 (1 + 24/25)
    assert k.kappa2 == pytest.approx(2.0 * (1.0 + 24.0 / 25.0), rel=1e-15)
    assert k.kappa3 == pytest.approx(k.kappa2 * (2.0 + 2.0 * math.sqrt(2.0)), rel=1e-15)
    assert k.kappa == k.kappa1 * k.kappa2


def test_constants_with_zero_beta():
    assert constants(3.0, 0.5, 2.0, 0.0, 0.1, 0.3).kappa1 == 3.0


@pytest.mark.parametrize(
    "args",
    [(0.5, 1, 1, 0.01, 1, 0.5), (2, 0, 1, 0.01, 1, 0.5), (2, 1, -1, 0.01, 1, 0.5), (2, 1, 1, 0.2, 1, 0.5),
     (2, 1, 1, 0.01, 2, 0.5), (2, 1, 1, 0.01, 1, 1.0)],
)
def test_constants_ranges(args):
    with pytest.raises(ParameterOutOfRange):
        constants(*args)


def test_local_rate_constants():
    lr = local_rate_constants(2.0, 1.0, 1.0)
    k1 = kappa1(2.0, 1 / 25)
    k = k1 * 2.0 * (1.0 + 24.0 / 25.0)
    c0 = k * math.sqrt(2) + 2 * k1 * (1 + 24 / 25 + 2 * k * 2 * (1 + 2 * math.sqrt(2)) * 24 / 23)
    assert lr.c0 == pytest.approx(c0, rel=1e-14)
    assert lr.rate_constant == pytest.approx(9 / math.sqrt(lr.c1), rel=1e-14)
    assert lr.threshold < lr.c1


# -- metrics and assumption estimates --------------------------------------------------------


def test_orthant_metric_is_slack_squared():
    problem, _ = generate_example("sharp_lp", (3, 6), 2)
    trace = solve(problem, SolverConfig(epsilon=1e-4))
    B, G = build_metrics(problem, trace)
    s1 = recenter(problem, problem.y_start, 1.0, 1e-12, 200).s
    assert np.allclose(B.matrix, np.diag(s1**2), rtol=1e-12)
    assert np.allclose(G.matrix, problem.A @ np.diag(1 / s1**2) @ problem.A.T, rtol=1e-10)
    a_norm, b_norm = operator_norms(problem, B, G)
    assert a_norm <= 1.0 + 1e-8 and b_norm <= math.sqrt(problem.nu) + 1e-8


def test_metrics_need_the_first_iterate():
    problem, _ = generate_example("sharp_lp", (3, 6), 2)
    trace = solve(problem, SolverConfig(epsilon=1e-4))
    trace.records = trace.records[1:]
    with pytest.raises(MissingInitialIterate):
        build_metrics(problem, trace)


def test_gamma_d_on_the_half_line():
    problem = ConicProblem(A=[[1.0]], b=[1.0], c=[1.0], cone="orthant 1", y_start=[0.0], y_star=[1.0])
    assert estimate_gamma_d(problem, G=SymOperator([[4.0]])) == pytest.approx(0.5, rel=1e-9)


def test_gamma_d_needs_an_optimum():
    problem = ConicProblem(A=[[1.0]], b=[1.0], c=[1.0], cone="orthant 1", y_start=[0.0])
    with pytest.raises(MissingOptimum):
        estimate_gamma_d(problem, G=SymOperator([[1.0]]))


def test_gamma_d_ladder_with_no_feasible_scales():
    problem = ConicProblem(A=[[1.0]], b=[1.0], c=[1.0], cone="orthant 1", y_start=[0.0], y_star=[1.0])
    with pytest.raises(NoSamples):
        gamma_d_ladder(problem, SymOperator([[1.0]]), scales=[])


@pytest.mark.parametrize(
    "name, params, degenerate",
    [("disc2d", (1.0, 0.0), True), ("parabola2d", (-1.0, 0.0), True), ("parabola2d", (-1.0, -1.0), False),
     ("sharp_lp", (3, 6), False), ("sharp_sdp", (3,), False)],
)
def test_sharpness_ladder(name, params, degenerate):
    problem, _ = generate_example(name, params, 0)
    ladder = gamma_d_ladder(problem)
    assert ladder.degenerate is degenerate


def test_sigma_d_bounded_on_a_sharp_lp():
    problem, _ = generate_example("sharp_lp", (3, 6), 3)
    trace = solve(problem, SolverConfig(epsilon=1e-10))
    val = estimate_sigma_d(problem, trace)
    assert 0.0 < val < math.inf


def test_assess_passes_on_sharp_instances():
    problem, _ = generate_example("sharp_sdp", (3,), 0)
    trace = solve(problem, SolverConfig(epsilon=1e-10))
    result = assess(problem, trace)
    assert result.report.passed, result.report.failures
    assert result.gamma_d_estimate > 0 and result.sigma_d_estimate >= 0
    assert result.B_metric.is_positive_definite()


def test_assess_flags_the_disc():
    problem, _ = generate_example("disc2d")
    trace = solve(problem, SolverConfig(epsilon=1e-6))
    result = assess(problem, trace)
    assert any("violated" in note or "not a cone" in note for note in result.notes)


def test_maxrep_ellipse():
    assert maxrep_mismatches([0.1, 0.3, 0.5]) == 0


# -- report format --------------------------------------------------------------------------


def test_report_round_trip():
    rep = Report()
    rep.add(at_most("err", 1e-9, 1e-8))
    rep.add(at_least("margin", -1.0, 0.0))
    rep.add(info("status", "converged"))
    parsed = parse_report("# a comment\n" + rep.text())
    assert parsed["err"]["status"] == "pass"
    assert parsed["margin"]["status"] == "fail"
    assert parsed["status"]["value"] == "converged"
    assert not rep.passed and [c.name for c in rep.failures] == ["margin"]
