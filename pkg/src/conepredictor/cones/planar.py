"""The two planar example sets.

These are barriers on convex subsets of R^2, not on cones, so the
log-homogeneity identities do not hold for them. ``sigma_measure`` is taken
in the homogenizing cone (``t >= |y|`` for the disc, the rotated cone times
a ray for the parabola region), whose barrier restricted to the ``t = 1``
slice is the planar barrier.
"""
from __future__ import annotations

import math

import numpy as np

from .base import Barrier, larger_root, smallest_positive_root


class Disc2D(Barrier):
    """Unit disc with ``f(y) = -ln(1 - |y|^2)``."""

    kind = "disc2d"
    homogeneous = False
    negative_curvature = False

    def __init__(self):
        self.dim = 2
        self.nu = 2.0

    def margin(self, y):
        return float(1.0 - np.linalg.norm(y))

    def _w(self, y):
        r = np.linalg.norm(y)
        return (1.0 - r) * (1.0 + r)

    def value(self, y):
        y = self.check(y)
        return -math.log(self._w(y))

    def gradient(self, y):
        y = self.check(y)
        return 2.0 * y / self._w(y)

    def hessian_matrix(self, y):
        y = self.check(y)
        w = self._w(y)
        return 2.0 * np.eye(2) / w + 4.0 * np.outer(y, y) / w**2

    def sigma_measure(self, y, h):
        y = self.check(y)
        h = np.asarray(h, dtype=float)
        # (rho, rho y - h) in the Lorentz cone
        rho = larger_root(self._w(y), 2.0 * (y @ h), -(h @ h))
        return max(0.0, rho)

    def max_step(self, y, d):
        y = self.check(y)
        d = np.asarray(d, dtype=float)
        return smallest_positive_root(d @ d, 2.0 * (y @ d), -self._w(y))

    def random_interior(self, rng):
        angle = rng.uniform(0.0, 2.0 * math.pi)
        return rng.uniform(0.0, 0.95) * np.array([math.cos(angle), math.sin(angle)])


class Parabola2D(Barrier):
    """``{y : y_2 >= 0, y_1 >= y_2^2}`` with ``f(y) = -ln(y_1 - y_2^2) - ln y_2``."""

    kind = "parabola2d"
    homogeneous = False
    negative_curvature = False

    def __init__(self):
        self.dim = 2
        self.nu = 2.0

    def margin(self, y):
        return float(min(y[0] - y[1] ** 2, y[1]))

    def value(self, y):
        y = self.check(y)
        return -math.log(y[0] - y[1] ** 2) - math.log(y[1])

    def gradient(self, y):
        y = self.check(y)
        g = y[0] - y[1] ** 2
        return np.array([-1.0 / g, 2.0 * y[1] / g - 1.0 / y[1]])

    def hessian_matrix(self, y):
        y = self.check(y)
        g = y[0] - y[1] ** 2
        off = -2.0 * y[1] / g**2
        return np.array([[1.0 / g**2, off], [off, 2.0 / g + 4.0 * y[1] ** 2 / g**2 + 1.0 / y[1] ** 2]])

    def sigma_measure(self, y, h):
        y = self.check(y)
        h = np.asarray(h, dtype=float)
        # lift: point (y1, y2, 1, y2), direction (h1, h2, 0, h2)
        g = y[0] - y[1] ** 2
        rho = larger_root(g, -(h[0] - 2.0 * y[1] * h[1]), -h[1] ** 2)
        return max(0.0, rho, h[1] / y[1])

    def max_step(self, y, d):
        y = self.check(y)
        d = np.asarray(d, dtype=float)
        a = smallest_positive_root(-d[1] ** 2, d[0] - 2.0 * y[1] * d[1], y[0] - y[1] ** 2)
        b = y[1] / -d[1] if d[1] < 0.0 else math.inf
        return min(a, b)

    def random_interior(self, rng):
        y2 = rng.uniform(0.05, 2.0)
        return np.array([y2**2 + rng.uniform(0.05, 2.0), y2])
