"""Center-sampled rasters of set descriptions and their 4-connectivity.

A raster is evidence about connectedness, never a proof: thin sets vanish
unless a cell center lies exactly on them.  At even resolutions no center
has coordinate 1/2, so a segment at level 1/2 rasterizes to nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import kernels
from .exactset import (
    Box,
    HORIZONTAL,
    Interval,
    Point,
    SeqSpec,
    SeqTrace,
    Segment,
    SetDesc,
    SinglePoint,
)


@dataclass(frozen=True, eq=False)
class GridMask:
    """``mask[j, i]`` is the cell with column ``i`` (x) and row ``j`` (y)."""

    n: int
    mask: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"resolution must be at least 2, got {self.n}")
        self.mask.setflags(write=False)

    def center(self, i: int, j: int) -> Point:
        return Point(Fraction(2 * i + 1, 2 * self.n), Fraction(2 * j + 1, 2 * self.n))

    @property
    def cell_count(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other):
        return isinstance(other, GridMask) and self.n == other.n and np.array_equal(self.mask, other.mask)


def centers(n: int) -> list[Fraction]:
    return [Fraction(2 * i + 1, 2 * n) for i in range(n)]


def center_index(v: Fraction, n: int) -> int | None:
    """Index ``i`` with center ``(2i+1)/(2n) == v``, if any."""
    t = 2 * n * v
    if t.denominator != 1 or t.numerator % 2 == 0:
        return None
    i = (t.numerator - 1) // 2
    return i if 0 <= i < n else None


def cell_of(p: Point, n: int) -> tuple[int, int]:
    """Column and row of the cell containing ``p``; boundary points go up/right."""
    return min(math.floor(p.x * n), n - 1), min(math.floor(p.y * n), n - 1)


def _axis(iv: Interval, cs: list[Fraction]) -> np.ndarray:
    return np.fromiter((c in iv for c in cs), dtype=bool, count=len(cs))


def _paint_trace(mask: np.ndarray, seq: SeqSpec, n: int, cs: list[Fraction]):
    for p in seq.prefix:
        i, j = center_index(p.x, n), center_index(p.y, n)
        if i is not None and j is not None:
            mask[j, i] = True
    fx, fy = seq.tail_x, seq.tail_y
    n0 = seq.tail_start
    if fx.is_constant and fy.is_constant:
        i, j = center_index(fx.c, n), center_index(fy.c, n)
        if i is not None and j is not None:
            mask[j, i] = True
        return
    if fx.is_constant:
        i = center_index(fx.c, n)
        if i is None:
            return
        for j, y in enumerate(cs):
            if fy.index_of(y, n0) is not None:
                mask[j, i] = True
        return
    for i, x in enumerate(cs):
        k = fx.index_of(x, n0)
        if k is not None:
            j = center_index(fy(k), n)
            if j is not None:
                mask[j, i] = True


def rasterize(s: SetDesc, n: int) -> GridMask:
    """Set cell ``(i, j)`` iff its center belongs to ``s``.  Exact and deterministic."""
    if n < 2:
        raise ValueError(f"resolution must be at least 2, got {n}")
    cs = centers(n)
    mask = np.zeros((n, n), dtype=bool)
    for part in s.parts:
        if isinstance(part, Box):
            mask |= np.outer(_axis(part.y, cs), _axis(part.x, cs))
        elif isinstance(part, Segment):
            k = center_index(part.level, n)
            if k is None:
                continue
            along = _axis(part.span, cs)
            if part.axis == HORIZONTAL:
                mask[k, :] |= along
            else:
                mask[:, k] |= along
        elif isinstance(part, SinglePoint):
            i, j = center_index(part.at.x, n), center_index(part.at.y, n)
            if i is not None and j is not None:
                mask[j, i] = True
        elif isinstance(part, SeqTrace):
            _paint_trace(mask, part.seq, n, cs)
    for d in s.deletions:
        i, j = center_index(d.x, n), center_index(d.y, n)
        if i is not None and j is not None:
            mask[j, i] = False
    return GridMask(n, mask, {"source": s.to_json(), "rule": "center"})


@dataclass(frozen=True, eq=False)
class Components:
    labels: np.ndarray
    count: int

    @property
    def connected(self) -> bool:
        return self.count <= 1


def label_components(g: GridMask | np.ndarray) -> Components:
    mask = g.mask if isinstance(g, GridMask) else g
    labels, count = kernels.label4(mask)
    return Components(labels, int(count))


def is_connected(g: GridMask) -> tuple[bool, Components]:
    """4-connectivity of the set cells; the empty mask counts as connected."""
    comps = label_components(g)
    return comps.connected, comps


def puncture(g: GridMask, punctures: Iterable[Point]) -> GridMask:
    mask = g.mask.copy()
    removed = []
    for p in punctures:
        i, j = cell_of(p, g.n)
        mask[j, i] = False
        removed.append([i, j])
    prov = dict(g.provenance, punctured_cells=removed)
    return GridMask(g.n, mask, prov)


def c1_component_count(s: SetDesc, punctures: Iterable[Point], n: int) -> int:
    """Components of the raster of ``s`` after removing each puncture's cell."""
    return label_components(puncture(rasterize(s, n), punctures)).count
