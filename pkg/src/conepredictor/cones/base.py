from __future__ import annotations

import math

import numpy as np

from ..errors import NoExplicitConjugate, OutsideCone
from ..linalg import SymOperator

INTERIOR_RTOL = 1e-12
BISECT_RTOL = 1e-10


class Barrier:
    """A barrier oracle for a convex set, usually a regular cone.

    Subclasses implement ``margin`` (positive exactly on the interior) and the
    derivative formulas. ``homogeneous`` is False for the planar example sets,
    which are not cones; for those the log-homogeneity identities do not apply.
    """

    kind = "abstract"
    homogeneous = True
    negative_curvature = True

    dim: int
    nu: float

    # -- membership -----------------------------------------------------------

    def margin(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,) or not np.all(np.isfinite(x)):
            return False
        return self.margin(x) > INTERIOR_RTOL * (1.0 + np.linalg.norm(x))

    def check(self, x) -> np.ndarray:
        """Validate ``x`` for oracle evaluation.

        Oracles only need a positive margin. The relative tolerance of
        :meth:`contains` is a membership report; applying it here would reject
        the slacks of order ``1e-13`` that a run to accuracy ``1e-12`` produces.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"{self.descriptor}: expected length {self.dim}, got {x.shape}")
        if not (np.all(np.isfinite(x)) and self.margin(x) > 0.0):
            raise OutsideCone(f"point is not strictly inside {self.descriptor}")
        return x

    # -- oracle ---------------------------------------------------------------

    def value(self, x) -> float:
        raise NotImplementedError

    def gradient(self, x) -> np.ndarray:
        raise NotImplementedError

    def hessian_matrix(self, x) -> np.ndarray:
        raise NotImplementedError

    def hessian(self, x) -> SymOperator:
        return SymOperator(self.hessian_matrix(x))

    def third_matrix(self, x, h) -> np.ndarray:
        return richardson_third(self, self.check(x), np.asarray(h, dtype=float))

    def third_directional(self, x, h) -> SymOperator:
        """The symmetric operator ``D^3 F(x)[h]``."""
        return SymOperator(self.third_matrix(x, h))

    def sigma_measure(self, x, h) -> float:
        """``min {rho >= 0 : rho x - h in K}``."""
        x = self.check(x)
        h = np.asarray(h, dtype=float)
        return bisect_sigma(self, x, h)

    def max_step(self, x, d) -> float:
        """``sup {a >= 0 : x + a d in K}``, possibly ``inf``."""
        x = self.check(x)
        return bisect_max_step(self, x, np.asarray(d, dtype=float))

    def conjugate_point(self, s) -> np.ndarray:
        raise NoExplicitConjugate(f"{self.descriptor} has no closed-form conjugate barrier")

    def random_interior(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    # -- descriptor -----------------------------------------------------------

    @property
    def descriptor(self) -> str:
        return self.kind

    def descriptor_lines(self) -> list[str]:
        return [self.descriptor]

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor} nu={self.nu}>"

    def __eq__(self, other):
        return isinstance(other, Barrier) and self.descriptor_lines() == other.descriptor_lines()

    def __hash__(self):
        return hash(tuple(self.descriptor_lines()))


def richardson_third(barrier: Barrier, x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Central differences of the Hessian along ``h``, one Richardson level.

    Base step is ``1e-4 (1 + |x|)`` measured along the unit direction; it is
    halved until both probes are interior.
    """
    hn = np.linalg.norm(h)
    if hn == 0.0:
        return np.zeros((barrier.dim, barrier.dim))
    u = h / hn
    t = 1e-4 * (1.0 + np.linalg.norm(x))
    while not (barrier.contains(x + t * u) and barrier.contains(x - t * u)):
        t *= 0.5
        if t < 1e-14:
            raise OutsideCone("no room for finite differences")

    def central(step):
        return (barrier.hessian_matrix(x + step * u) - barrier.hessian_matrix(x - step * u)) / (2.0 * step)

    d1 = central(t)
    d2 = central(0.5 * t)
    out = (4.0 * d2 - d1) / 3.0 * hn
    return 0.5 * (out + out.T)


def bisect_max_step(barrier: Barrier, x: np.ndarray, d: np.ndarray) -> float:
    if not np.any(d):
        return math.inf
    hi = 1.0
    while barrier.contains(x + hi * d):
        hi *= 2.0
        if hi > 1e16:
            return math.inf
    lo = 0.0
    while hi - lo > BISECT_RTOL * max(hi, 1e-300):
        mid = 0.5 * (lo + hi)
        if barrier.contains(x + mid * d):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_sigma(barrier: Barrier, x: np.ndarray, h: np.ndarray) -> float:
    # rho x - h in int K  <=>  x - h / rho in int K for rho > 0
    def inside(rho):
        return rho > 0 and barrier.contains(rho * x - h)

    if not np.any(h) or barrier.contains(-h):
        return 0.0
    hi = 1.0
    while not inside(hi):
        hi *= 2.0
        if hi > 1e16:
            return math.inf
    lo = 0.0
    while hi - lo > BISECT_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def larger_root(a: float, b: float, c: float) -> float:
    """Larger real root of ``a t^2 + b t + c`` for ``a > 0`` (discriminant clipped at 0)."""
    disc = math.sqrt(max(b * b - 4.0 * a * c, 0.0))
    if b <= 0.0:
        return (-b + disc) / (2.0 * a)
    # -b - disc is the stable numerator for the smaller root
    q = -0.5 * (b + disc)
    return c / q if q != 0.0 else 0.0


def smallest_positive_root(a: float, b: float, c: float) -> float:
    """Smallest positive root of ``a t^2 + b t + c`` given ``c > 0``; ``inf`` if none."""
    if a == 0.0:
        return -c / b if b < 0.0 else math.inf
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return math.inf
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    roots = [r for r in ((q / a) if q != 0.0 else math.inf, (c / q) if q != 0.0 else math.inf) if r > 0.0]
    return min(roots) if roots else math.inf
