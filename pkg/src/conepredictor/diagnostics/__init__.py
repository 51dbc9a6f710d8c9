"""Numerical certification: barrier checks, assumption constants and rate fits."""
from .assumptions import (
    AssumptionReport,
    Constants,
    GammaLadder,
    LocalRate,
    SigmaProfile,
    assess,
    build_metrics,
    centered_points,
    constants,
    estimate_gamma_d,
    estimate_sigma_d,
    gamma_d_ladder,
    local_rate_constants,
    maxrep_mismatches,
    operator_norms,
    recenter,
    sigma_d_profile,
    trace_points,
)
from .barrier import (
    ReducedBarrier,
    check_lemma_ell,
    check_step_hessian,
    fd_check,
    identity_residuals,
    identity_suite,
)
from .rates import (
    RateReport,
    check_linear_rate,
    fit_tail_exponent,
    initial_step_failures,
    linear_rate_factor,
    predictor_growth_violations,
    trial_budget,
    xi_equation_root,
)
from .report import CheckResult, Report, parse_report

__all__ = [
    "AssumptionReport", "CheckResult", "Constants", "GammaLadder", "LocalRate", "RateReport",
    "ReducedBarrier", "Report", "SigmaProfile", "assess", "build_metrics", "centered_points",
    "check_lemma_ell", "check_linear_rate", "check_step_hessian", "constants", "estimate_gamma_d",
    "estimate_sigma_d", "fd_check", "fit_tail_exponent", "gamma_d_ladder", "identity_residuals",
    "identity_suite", "initial_step_failures", "linear_rate_factor", "local_rate_constants",
    "maxrep_mismatches", "operator_norms", "parse_report", "predictor_growth_violations", "recenter",
    "sigma_d_profile", "trace_points", "trial_budget", "xi_equation_root",
]
