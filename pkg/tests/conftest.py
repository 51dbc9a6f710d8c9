import os
import time

import pytest
from hypothesis import settings

import cases
from conepredictor import SolverConfig, solve

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class SolvedCase:
    def __init__(self, case):
        self.case = case
        self.label = cases.label(case)
        self.problem = cases.build(case)
        start = time.perf_counter()
        try:
            self.trace = solve(self.problem, SolverConfig(epsilon=cases.EPSILON))
            self.error = None
        except Exception as exc:  # kept for reporting, the trace is partial
            self.trace = getattr(exc, "trace", None)
            self.error = exc
        self.seconds = time.perf_counter() - start


@pytest.fixture(scope="session")
def sharp_runs():
    """Every sharp acceptance instance solved once at accuracy 1e-12."""
    return [SolvedCase(c) for c in cases.SHARP_CASES]


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(test_acceptance.VERDICTS[key])
