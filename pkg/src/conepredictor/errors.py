"""Exception hierarchy.

Every failure the solver can surface is a subclass of :class:`ConeError`, so
callers that only care about "did it work" can catch one type.
"""


class ConeError(Exception):
    """Base class for all package errors."""


class NotPositiveDefinite(ConeError):
    """A Cholesky pivot was not positive."""


class RankDeficient(ConeError):
    """The Schur metric A B^-1 A^T (or a Newton system) is singular."""


class OutsideCone(ConeError):
    """A point handed to a barrier oracle is not strictly interior."""


class NoExplicitConjugate(ConeError):
    """The cone has no closed-form conjugate barrier."""


class UnboundedStep(ConeError):
    """The predictor direction is a recession direction of the slack cone."""


class StepAtBoundary(ConeError):
    """A step length reached the maximal feasible step."""


class CorrectorStalled(ConeError):
    """Newton centering did not reach its target within the step budget."""


class InitialStepRejected(ConeError):
    """The first predictor trial failed the proximity test."""


class IterationLimit(ConeError):
    """The outer loop hit its iteration cap before the stopping rule."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class MissingInitialIterate(ConeError):
    pass


class MissingOptimum(ConeError):
    pass


class NoSamples(ConeError):
    pass


class ParameterOutOfRange(ConeError, ValueError):
    pass


class WindowTooShort(ConeError):
    pass


class HypothesisNotSatisfied(ConeError):
    pass


class UnknownExample(ConeError, KeyError):
    pass


class ProblemParseError(ConeError):
    """Base for problem-file errors; carries the offending 1-based line."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ProblemSyntaxError(ProblemParseError):
    pass


class DimensionMismatch(ProblemParseError):
    pass


class InfeasibleStart(ProblemParseError):
    pass
