"""Problem files, trace CSV files and atomic writes.

Problem file grammar (``CONEPROB 1``), one statement per line, ``#``
starts a comment, blank lines are ignored::

    CONEPROB 1
    name <text>                 optional
    cone <kind> [<size>]        one line per factor of a product cone
    m <int>
    A                           followed by m rows of n numbers
    b <m numbers>
    c <n numbers>
    y_start <m numbers>
    optimum                     optional block with any of the four keys
    y_star <m numbers>
    s_star <n numbers>
    f_star <number>
    x_star <n numbers>
    end

Numbers are written with ``repr``, so a write-parse-write cycle is the
identity. Every parse error carries the 1-based line number.
"""
from __future__ import annotations

import csv
import io as _io
import math
import os
import tempfile

import numpy as np

from .cones import make_cone
from .errors import DimensionMismatch, InfeasibleStart, ProblemSyntaxError, RankDeficient
from .geometry import ConicProblem
from .pathfollow import TRACE_COLUMNS, ConvergenceTrace, IterateRecord, SolverConfig

HEADER = "CONEPROB 1"
_VECTOR_KEYS = ("b", "c", "y_start", "y_star", "s_star", "x_star")
_OPTIMUM_KEYS = ("y_star", "s_star", "f_star", "x_star")


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=folder)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- problem files ------------------------------------------------------------------


def _numbers(tokens, lineno):
    out = []
    for tok in tokens:
        try:
            val = float(tok)
        except ValueError:
            raise ProblemSyntaxError(f"not a number: {tok!r}", lineno) from None
        if not math.isfinite(val):
            raise ProblemSyntaxError(f"non-finite number {tok!r}", lineno)
        out.append(val)
    return np.array(out)


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_problem(text: str, validate: bool = True) -> ConicProblem:
    """Parse a ``CONEPROB 1`` document.

    Raises
    ------
    ProblemSyntaxError
        Malformed or missing statements.
    DimensionMismatch
        Lengths inconsistent with the cone dimension or ``m``.
    InfeasibleStart
        ``c - A^T y_start`` is not strictly inside the cone (with ``validate``).
    """
    lines = list(_lines(text))
    if not lines or lines[0][1] != HEADER:
        raise ProblemSyntaxError(f"first line must be {HEADER!r}", lines[0][0] if lines else 1)
    cones, where = [], {}
    name = ""
    m = None
    rows = []
    data = {}
    in_optimum = False
    ended = False
    i = 1
    while i < len(lines):
        lineno, line = lines[i]
        key, *rest = line.split()
        if ended:
            raise ProblemSyntaxError("content after 'end'", lineno)
        if key == "name":
            name = line[len("name"):].strip()
        elif key == "cone":
            if in_optimum or m is not None:
                raise ProblemSyntaxError("cone lines must precede 'm'", lineno)
            try:
                cones.append(make_cone(" ".join(rest)))
            except ValueError as exc:
                raise ProblemSyntaxError(str(exc), lineno) from None
            where.setdefault("cone", lineno)
        elif key == "m":
            if not cones:
                raise ProblemSyntaxError("'m' before any cone line", lineno)
            if len(rest) != 1 or not rest[0].isdigit() or int(rest[0]) < 1:
                raise ProblemSyntaxError("'m' takes one positive integer", lineno)
            m = int(rest[0])
            where["m"] = lineno
        elif key == "A":
            if m is None:
                raise ProblemSyntaxError("'A' before 'm'", lineno)
            if rest:
                raise ProblemSyntaxError("'A' stands alone; rows follow on the next lines", lineno)
            n = sum(c.dim for c in cones)
            for _ in range(m):
                i += 1
                if i >= len(lines):
                    raise ProblemSyntaxError(f"expected {m} rows of A", lineno)
                rl, row_text = lines[i]
                row = _numbers(row_text.split(), rl)
                if row.size != n:
                    raise DimensionMismatch(f"row of A has {row.size} entries, the cone has dimension {n}", rl)
                rows.append(row)
            where["A"] = lineno
        elif key in _VECTOR_KEYS or key == "f_star":
            if key in _OPTIMUM_KEYS and not in_optimum:
                raise ProblemSyntaxError(f"'{key}' belongs to the optimum block", lineno)
            if key not in _OPTIMUM_KEYS and in_optimum:
                raise ProblemSyntaxError(f"'{key}' cannot appear inside the optimum block", lineno)
            if key in data:
                raise ProblemSyntaxError(f"duplicate '{key}'", lineno)
            data[key] = _numbers(rest, lineno)
            where[key] = lineno
        elif key == "optimum":
            if in_optimum:
                raise ProblemSyntaxError("duplicate 'optimum'", lineno)
            in_optimum = True
        elif key == "end":
            ended = True
            where["end"] = lineno
        else:
            raise ProblemSyntaxError(f"unknown statement {key!r}", lineno)
        i += 1
    last = lines[-1][0]
    if not ended:
        raise ProblemSyntaxError("missing 'end'", last)
    for key in ("m", "A", "b", "c", "y_start"):
        if key not in where:
            raise ProblemSyntaxError(f"missing '{key}'", where["end"])

    cone = make_cone(cones)
    n = cone.dim
    A = np.array(rows)
    lengths = {"b": m, "y_start": m, "y_star": m, "c": n, "s_star": n, "x_star": n, "f_star": 1}
    for key, val in data.items():
        if val.size != lengths[key]:
            raise DimensionMismatch(f"'{key}' has {val.size} entries, expected {lengths[key]}", where[key])
    known = {k: data[k] for k in ("y_star", "s_star", "x_star") if k in data}
    if "f_star" in data:
        known["f_star"] = float(data["f_star"][0])
    problem = ConicProblem(A=A, b=data["b"], c=data["c"], cone=cone, y_start=data["y_start"], name=name, **known)
    if validate:
        if np.linalg.matrix_rank(A) < m:
            raise RankDeficient(f"line {where['A']}: A must have full row rank")
        if not cone.contains(problem.c - A.T @ problem.y_start):
            raise InfeasibleStart("c - A^T y_start is not strictly inside the cone", where["y_start"])
    return problem


def read_problem(path, validate: bool = True) -> ConicProblem:
    with open(path) as fh:
        return parse_problem(fh.read(), validate)


def _vec(values) -> str:
    return " ".join(repr(float(v)) for v in np.asarray(values).reshape(-1))


def format_problem(problem: ConicProblem) -> str:
    out = [HEADER]
    if problem.name:
        out.append(f"name {problem.name}")
    out += [f"cone {d}" for d in problem.cone.descriptor_lines()]
    out.append(f"m {problem.m}")
    out.append("A")
    out += [_vec(row) for row in problem.A]
    out.append(f"b {_vec(problem.b)}")
    out.append(f"c {_vec(problem.c)}")
    out.append(f"y_start {_vec(problem.y_start)}")
    if problem.y_star is not None:
        out.append("optimum")
        out.append(f"y_star {_vec(problem.y_star)}")
        if problem.s_star is not None:
            out.append(f"s_star {_vec(problem.s_star)}")
        if problem.f_star is not None:
            out.append(f"f_star {repr(float(problem.f_star))}")
        if problem.x_star is not None:
            out.append(f"x_star {_vec(problem.x_star)}")
    out.append("end")
    return "\n".join(out) + "\n"


def write_problem(problem: ConicProblem, path) -> None:
    atomic_write(path, format_problem(problem))


# -- trace files --------------------------------------------------------------------

_INT_COLUMNS = {"k", "i_k", "corrector_steps"}


def _cell(name, value) -> str:
    if name in _INT_COLUMNS:
        return str(int(value))
    return "%.17g" % float(value)


def format_trace(trace: ConvergenceTrace) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for rec in trace.records:
        w.writerow([_cell(c, v) for c, v in zip(TRACE_COLUMNS, rec.row())])
    return buf.getvalue()


def write_trace(trace: ConvergenceTrace, path) -> None:
    atomic_write(path, format_trace(trace))


def nu_from_gap_bound(kappa: float, beta: float = 1.0 / 25.0) -> float:
    """Invert ``kappa1(nu, beta)``, which is increasing in ``nu``."""
    # kappa = nu + beta(beta + t)/(1 - beta) with t = sqrt(nu): a quadratic in t
    q = beta / (1.0 - beta)
    t = (-q + math.sqrt(q * q + 4.0 * (kappa - q * beta))) / 2.0
    return t * t


def parse_trace(text: str, nu: float | None = None, config: SolverConfig | None = None) -> ConvergenceTrace:
    """Read a trace CSV; ``nu`` defaults to the value implied by row 0."""
    reader = csv.reader(_io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ProblemSyntaxError("empty trace file", 1) from None
    if tuple(h.strip() for h in header) != TRACE_COLUMNS:
        raise ProblemSyntaxError(f"trace header must be {','.join(TRACE_COLUMNS)}", 1)
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(TRACE_COLUMNS):
            raise DimensionMismatch(f"expected {len(TRACE_COLUMNS)} fields, got {len(row)}", lineno)
        vals = {}
        for c, cell in zip(TRACE_COLUMNS, row):
            try:
                vals[c] = int(cell) if c in _INT_COLUMNS else float(cell)
            except ValueError:
                raise ProblemSyntaxError(f"bad value {cell!r} in column {c}", lineno) from None
        records.append(IterateRecord(**vals))
    config = config or SolverConfig()
    if nu is None:
        nu = nu_from_gap_bound(records[0].gap_bound, config.beta(1.0)) if records and records[0].mu == 1.0 else math.nan
    return ConvergenceTrace(records, nu, config)


def read_trace(path, nu: float | None = None) -> ConvergenceTrace:
    with open(path, newline="") as fh:
        return parse_trace(fh.read(), nu)
