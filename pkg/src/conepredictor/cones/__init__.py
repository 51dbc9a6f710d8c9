"""Barrier oracles for the supported cones and the two planar example sets."""
from __future__ import annotations

import re

from .base import Barrier
from .matrix import HankelCone, MatrixCone, PSDCone, smat, svec
from .orthant import Orthant
from .planar import Disc2D, Parabola2D
from .product import ProductCone
from .soc import SecondOrderCone

_SIZED = {
    "orthant": Orthant,
    "psd": PSDCone,
    "soc": SecondOrderCone,
    "hankel_poly": HankelCone,
    "hankel": HankelCone,
}
_PLANAR = {"disc2d": Disc2D, "parabola2d": Parabola2D}

_PATTERN = re.compile(r"^\s*([a-z_]+?)\s*(?:\(\s*(\d+)\s*\)|\s+(\d+)|(\d+))?\s*$")


def make_cone(spec) -> Barrier:
    """Build a barrier from a descriptor.

    Accepts ``"orthant 3"``, ``"orthant(3)"``, ``"psd3"``, ``"hankel_poly 2"``,
    ``"disc2d"``, or a list of such strings for a product cone.
    """
    if isinstance(spec, Barrier):
        return spec
    if isinstance(spec, (list, tuple)):
        parts = [make_cone(s) for s in spec]
        return parts[0] if len(parts) == 1 else ProductCone(parts)
    text = str(spec).strip().lower()
    if text in _PLANAR:
        return _PLANAR[text]()
    m = _PATTERN.match(text)
    if m is None or m.group(1) not in _SIZED:
        raise ValueError(f"unknown cone descriptor {spec!r}")
    size = m.group(2) or m.group(3) or m.group(4)
    if size is None:
        raise ValueError(f"cone descriptor {spec!r} needs a size")
    return _SIZED[m.group(1)](int(size))


__all__ = [
    "Barrier",
    "Disc2D",
    "HankelCone",
    "MatrixCone",
    "Orthant",
    "PSDCone",
    "Parabola2D",
    "ProductCone",
    "SecondOrderCone",
    "make_cone",
    "smat",
    "svec",
]
