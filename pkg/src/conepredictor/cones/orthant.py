from __future__ import annotations

import math

import numpy as np

from .base import Barrier


class Orthant(Barrier):
    """Nonnegative orthant with ``F(x) = -sum ln x_i``."""

    kind = "orthant"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("orthant dimension must be positive")
        self.dim = int(n)
        self.nu = float(n)

    @property
    def descriptor(self):
        return f"orthant {self.dim}"

    def margin(self, x):
        return float(np.min(x))

    def value(self, x):
        return float(-np.sum(np.log(self.check(x))))

    def gradient(self, x):
        return -1.0 / self.check(x)

    def hessian_matrix(self, x):
        return np.diag(1.0 / self.check(x) ** 2)

    def third_matrix(self, x, h):
        x = self.check(x)
        return np.diag(-2.0 * np.asarray(h, dtype=float) / x**3)

    def sigma_measure(self, x, h):
        x = self.check(x)
        return max(0.0, float(np.max(np.asarray(h, dtype=float) / x)))

    def max_step(self, x, d):
        x = self.check(x)
        d = np.asarray(d, dtype=float)
        neg = d < 0.0
        if not np.any(neg):
            return math.inf
        return float(np.min(x[neg] / -d[neg]))

    def conjugate_point(self, s):
        return 1.0 / self.check(s)

    def random_interior(self, rng):
        return np.exp(rng.normal(size=self.dim))
