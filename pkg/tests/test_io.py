import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conepredictor import SolverConfig, generate_example, solve
from conepredictor.errors import DimensionMismatch, InfeasibleStart, ProblemSyntaxError, RankDeficient
from conepredictor.io import (
    format_problem,
    format_trace,
    nu_from_gap_bound,
    parse_problem,
    parse_trace,
    read_problem,
    write_problem,
    write_trace,
)
from conepredictor.geometry import kappa1

MINIMAL = """CONEPROB 1
cone orthant 1
m 1
A
1
b 1
c 1
y_start 0
end
"""

ALL_EXAMPLES = [
    ("disc2d", ()), ("parabola2d", ()), ("parabola2d", (-1.0, -1.0)), ("sharp_lp", (3, 6)),
    ("sharp_sdp", (3,)), ("soc_test", (4,)), ("hankel_poly", (3,)),
]


def test_minimal_file():
    p = parse_problem(MINIMAL)
    assert np.array_equal(p.c - p.A.T @ p.y_start, [1.0])
    assert p.cone.descriptor == "orthant 1"


@pytest.mark.parametrize("name, params", ALL_EXAMPLES)
def test_round_trip_is_identity(name, params):
    problem, _ = generate_example(name, params, 5)
    text = format_problem(problem)
    again = parse_problem(text)
    assert format_problem(again) == text
    assert np.array_equal(again.A, problem.A) and np.array_equal(again.y_start, problem.y_start)


@given(st.integers(0, 2**63 - 1))
def test_round_trip_orthant_fixture(seed):
    problem, _ = generate_example("sharp_lp", (3, 4), seed)
    text = format_problem(problem)
    assert format_problem(parse_problem(text)) == text


def test_product_cone_round_trip():
    text = MINIMAL.replace("cone orthant 1", "cone orthant 1\ncone soc 2").replace("\n1\nb", "\n1 0 0\nb").replace(
        "c 1", "c 1 1 0")
    problem = parse_problem(text)
    assert problem.cone.dim == 3
    assert format_problem(parse_problem(format_problem(problem))) == format_problem(problem)


def _error_line(text, exc_type):
    with pytest.raises(exc_type) as info:
        parse_problem(text)
    return info.value


def test_row_length_mismatch_reports_line():
    err = _error_line(MINIMAL.replace("A\n1\n", "A\n1 2\n"), DimensionMismatch)
    assert err.line == 5 and "line 5" in str(err)


@pytest.mark.parametrize(
    "mutate, line",
    [
        (lambda t: t.replace("CONEPROB 1", "CONEPROB 2"), 1),
        (lambda t: t.replace("cone orthant 1", "cone cube 1"), 2),
        (lambda t: t.replace("b 1", "b one"), 6),
        (lambda t: t.replace("b 1", "b nan"), 6),
        (lambda t: t.replace("m 1", "m x"), 3),
        (lambda t: t.replace("end\n", ""), 8),
        (lambda t: t.replace("b 1\n", "b 1\nb 2\n"), 7),
        (lambda t: t.replace("end", "end\nc 2"), 10),
        (lambda t: t.replace("y_start 0", "y_star 0"), 8),
        (lambda t: t.replace("y_start 0\n", ""), 8),
    ],
)
def test_syntax_errors_carry_line_numbers(mutate, line):
    err = _error_line(mutate(MINIMAL), ProblemSyntaxError)
    assert err.line == line


def test_vector_length_mismatch():
    assert _error_line(MINIMAL.replace("c 1", "c 1 2"), DimensionMismatch).line == 7


def test_infeasible_start():
    err = _error_line(MINIMAL.replace("y_start 0", "y_start 2"), InfeasibleStart)
    assert err.line == 8


def test_rank_deficient():
    text = MINIMAL.replace("m 1", "m 2").replace("A\n1\n", "A\n1\n2\n").replace("b 1", "b 1 1").replace(
        "y_start 0", "y_start 0 0")
    with pytest.raises(RankDeficient, match="line 4"):
        parse_problem(text)
    assert parse_problem(text, validate=False).m == 2


def test_comments_and_blank_lines():
    text = "# header comment\n\n" + MINIMAL.replace("m 1", "m 1   # one row")
    assert parse_problem(text).m == 1


def test_atomic_write_leaves_no_temporaries(tmp_path):
    problem, _ = generate_example("sharp_lp", (2, 4), 0)
    path = tmp_path / "p.prob"
    write_problem(problem, path)
    write_problem(problem, path)
    assert os.listdir(tmp_path) == ["p.prob"]
    assert format_problem(read_problem(path)) == format_problem(problem)


def test_trace_round_trip(tmp_path):
    problem, _ = generate_example("sharp_lp", (3, 6), 1)
    trace = solve(problem, SolverConfig(epsilon=1e-10))
    text = format_trace(trace)
    lines = text.splitlines()
    assert lines[0] == "k,mu,alpha_bar,alpha,i_k,gamma_pre,gamma_post,corrector_steps,dual_obj,gap_bound"
    assert len(lines) == len(trace.records) + 1
    back = parse_trace(text)
    # %.17g is exact, so the parsed rows equal the originals bit for bit (NaN in row 0)
    np.testing.assert_array_equal(np.array([r.row() for r in back.records]), np.array([r.row() for r in trace.records]))
    assert back.nu == pytest.approx(problem.nu, rel=1e-12)
    write_trace(trace, tmp_path / "t.csv")
    assert (tmp_path / "t.csv").read_text() == text


@given(st.floats(1.0, 1e4), st.floats(1e-6, 1.0 / 25.0))
def test_nu_from_gap_bound_inverts_kappa1(nu, beta):
    assert nu_from_gap_bound(kappa1(nu, beta), beta) == pytest.approx(nu, rel=1e-10)


@pytest.mark.parametrize(
    "text, exc",
    [("", ProblemSyntaxError), ("a,b\n", ProblemSyntaxError),
     ("k,mu,alpha_bar,alpha,i_k,gamma_pre,gamma_post,corrector_steps,dual_obj,gap_bound\n1,2\n", DimensionMismatch),
     ("k,mu,alpha_bar,alpha,i_k,gamma_pre,gamma_post,corrector_steps,dual_obj,gap_bound\nx,1,1,1,1,1,1,1,1,1\n",
      ProblemSyntaxError)],
)
def test_bad_traces(text, exc):
    with pytest.raises(exc):
        parse_trace(text)
