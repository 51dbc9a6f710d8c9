from __future__ import annotations

import math

import numpy as np

from .base import Barrier, larger_root, smallest_positive_root


def _lorentz(u, v):
    return u[0] * v[0] - u[1:] @ v[1:]


class SecondOrderCone(Barrier):
    """``{x : x_0 >= |x_1..|}`` with ``F(x) = -ln(x_0^2 - |x_bar|^2)``, nu = 2."""

    kind = "soc"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("second-order cone needs dimension >= 2")
        self.dim = int(n)
        self.nu = 2.0
        self._sign = np.ones(n)
        self._sign[1:] = -1.0

    @property
    def descriptor(self):
        return f"soc {self.dim}"

    def margin(self, x):
        return float(x[0] - np.linalg.norm(x[1:]))

    def _q(self, x):
        # (x0 - |xb|)(x0 + |xb|) loses less than x0^2 - |xb|^2 near the boundary
        r = np.linalg.norm(x[1:])
        return (x[0] - r) * (x[0] + r)

    def value(self, x):
        x = self.check(x)
        return -math.log(self._q(x))

    def gradient(self, x):
        x = self.check(x)
        return -2.0 * self._sign * x / self._q(x)

    def hessian_matrix(self, x):
        x = self.check(x)
        q = self._q(x)
        jx = self._sign * x
        return -2.0 * np.diag(self._sign) / q + 4.0 * np.outer(jx, jx) / q**2

    def third_matrix(self, x, h):
        x = self.check(x)
        h = np.asarray(h, dtype=float)
        q = self._q(x)
        jx = self._sign * x
        jh = self._sign * h
        dq = 2.0 * (jx @ h)
        return (
            2.0 * np.diag(self._sign) * dq / q**2
            + 4.0 * (np.outer(jh, jx) + np.outer(jx, jh)) / q**2
            - 8.0 * np.outer(jx, jx) * dq / q**3
        )

    def sigma_measure(self, x, h):
        x = self.check(x)
        h = np.asarray(h, dtype=float)
        # rho x - h in K  <=>  rho >= larger root of <rho x - h, J(rho x - h)> = 0
        rho = larger_root(self._q(x), -2.0 * _lorentz(x, h), _lorentz(h, h))
        return max(0.0, rho)

    def max_step(self, x, d):
        x = self.check(x)
        d = np.asarray(d, dtype=float)
        if d[0] >= np.linalg.norm(d[1:]):
            return math.inf
        return smallest_positive_root(_lorentz(d, d), 2.0 * _lorentz(x, d), self._q(x))

    def conjugate_point(self, s):
        s = self.check(s)
        return 2.0 * self._sign * s / self._q(s)

    def random_interior(self, rng):
        xb = rng.normal(size=self.dim - 1)
        return np.concatenate([[np.linalg.norm(xb) + np.exp(rng.normal())], xb])
