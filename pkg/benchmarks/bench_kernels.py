"""Compare the numba and numpy Hankel kernels.

Run ``python3 benchmarks/bench_kernels.py [orders...]``. Each kernel is
first checked for agreement between the two backends, then timed with
``timeit`` after a warm-up call (which also triggers numba compilation).
A full Hankel barrier evaluation is timed under each backend as well.
"""
from __future__ import annotations

import sys
import timeit

import numpy as np

from conepredictor import _kernels
from conepredictor.cones import HankelCone

NAMES = ("hankel_matrix", "antidiagonal_sums", "hankel_pair_form")


def _inputs(order: int, rng):
    s = rng.normal(size=2 * order - 1)
    w = rng.normal(size=(order, order))
    p = rng.normal(size=(order, order))
    q = rng.normal(size=(order, order))
    return {"hankel_matrix": (s,), "antidiagonal_sums": (w,), "hankel_pair_form": (p, q)}


def _best(fn, args, number):
    fn(*args)
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=5)) / number


def _barrier_time(order, backend, number):
    saved = (_kernels.hankel_matrix, _kernels.antidiagonal_sums, _kernels.hankel_pair_form)
    (_kernels.hankel_matrix, _kernels.antidiagonal_sums, _kernels.hankel_pair_form) = _kernels.BACKENDS[backend]
    try:
        cone = HankelCone(order - 1)
        x = cone.random_interior(np.random.default_rng(0))
        h = np.random.default_rng(1).normal(size=cone.dim)

        def work():
            cone.gradient(x)
            cone.hessian_matrix(x)
            cone.third_matrix(x, h)

        return _best(lambda: work(), (), number)
    finally:
        (_kernels.hankel_matrix, _kernels.antidiagonal_sums, _kernels.hankel_pair_form) = saved


def main(orders):
    rng = np.random.default_rng(0)
    print(f"numba available: {_kernels.HAVE_NUMBA}; active backend: {_kernels.BACKEND}")
    print(f"{'kernel':<20}{'order':>6}{'numpy [us]':>14}{'numba [us]':>14}{'speedup':>10}")
    for order in orders:
        args = _inputs(order, rng)
        number = max(10, 20000 // order**2)
        for i, name in enumerate(NAMES):
            f_np = _kernels.BACKENDS["numpy"][i]
            f_nb = _kernels.BACKENDS["numba"][i]
            if not np.allclose(f_np(*args[name]), f_nb(*args[name]), rtol=1e-12, atol=1e-12):
                raise SystemExit(f"{name}: backends disagree at order {order}")
            t_np = _best(f_np, args[name], number)
            t_nb = _best(f_nb, args[name], number)
            print(f"{name:<20}{order:>6}{t_np * 1e6:>14.2f}{t_nb * 1e6:>14.2f}{t_np / t_nb:>10.1f}")
        t_np = _barrier_time(order, "numpy", max(3, number // 10))
        t_nb = _barrier_time(order, "numba", max(3, number // 10))
        print(f"{'barrier g+H+D3':<20}{order:>6}{t_np * 1e6:>14.2f}{t_nb * 1e6:>14.2f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [3, 5, 8, 12])
