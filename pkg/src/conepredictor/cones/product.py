from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .base import Barrier


class ProductCone(Barrier):
    """Direct product of cones; the barrier is the sum of the block barriers."""

    kind = "product"

    def __init__(self, parts):
        parts = list(parts)
        if not parts:
            raise ValueError("product of zero cones")
        self.parts = parts
        sizes = [p.dim for p in parts]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)])
        self.dim = int(self.offsets[-1])
        self.nu = float(sum(p.nu for p in parts))
        self.homogeneous = all(p.homogeneous for p in parts)
        self.negative_curvature = all(p.negative_curvature for p in parts)

    @property
    def descriptor(self):
        return "product(" + ", ".join(p.descriptor for p in self.parts) + ")"

    def descriptor_lines(self):
        return [p.descriptor for p in self.parts]

    def split(self, x):
        return [x[a:b] for a, b in zip(self.offsets[:-1], self.offsets[1:])]

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            return False
        return all(p.contains(xi) for p, xi in zip(self.parts, self.split(x)))

    def margin(self, x):
        return min(p.margin(xi) for p, xi in zip(self.parts, self.split(x)))

    def value(self, x):
        x = self.check(x)
        return sum(p.value(xi) for p, xi in zip(self.parts, self.split(x)))

    def gradient(self, x):
        x = self.check(x)
        return np.concatenate([p.gradient(xi) for p, xi in zip(self.parts, self.split(x))])

    def hessian_matrix(self, x):
        x = self.check(x)
        return sla.block_diag(*[p.hessian_matrix(xi) for p, xi in zip(self.parts, self.split(x))])

    def third_matrix(self, x, h):
        x = self.check(x)
        h = np.asarray(h, dtype=float)
        blocks = [p.third_matrix(xi, hi) for p, xi, hi in zip(self.parts, self.split(x), self.split(h))]
        return sla.block_diag(*blocks)

    def sigma_measure(self, x, h):
        x = self.check(x)
        h = np.asarray(h, dtype=float)
        return max(p.sigma_measure(xi, hi) for p, xi, hi in zip(self.parts, self.split(x), self.split(h)))

    def max_step(self, x, d):
        x = self.check(x)
        d = np.asarray(d, dtype=float)
        return min(p.max_step(xi, di) for p, xi, di in zip(self.parts, self.split(x), self.split(d)))

    def conjugate_point(self, s):
        s = self.check(s)
        return np.concatenate([p.conjugate_point(si) for p, si in zip(self.parts, self.split(s))])

    def random_interior(self, rng):
        return np.concatenate([p.random_interior(rng) for p in self.parts])
