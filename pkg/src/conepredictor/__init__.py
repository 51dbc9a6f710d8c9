"""Dual predictor-corrector path following for conic problems whose barriers
have negative curvature, with diagnostics for the rate theory behind it."""

__version__ = "0.1.0"

from .cones import Barrier, make_cone
from .errors import ConeError
from .generators import generate_example
from .geometry import ConicProblem, DualPoint, PathIterate
from .io import parse_problem, read_problem, read_trace, write_problem, write_trace
from .pathfollow import ConvergenceTrace, SolverConfig, solve

__all__ = [
    "Barrier",
    "ConeError",
    "ConicProblem",
    "ConvergenceTrace",
    "DualPoint",
    "PathIterate",
    "SolverConfig",
    "generate_example",
    "make_cone",
    "parse_problem",
    "read_problem",
    "read_trace",
    "solve",
    "write_problem",
    "write_trace",
]
