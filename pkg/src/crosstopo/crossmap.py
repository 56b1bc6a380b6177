"""Cross-mappings on raster grids and the row/column collapse classifier.

A :class:`GridFn` samples a map on the cell centers of an ``N x N`` grid over
a domain rectangle.  Continuity is replaced by a discrete modulus: images of
4-adjacent cells differ by at most ``1/N`` in each coordinate.  For maps into
a finite cross the enumerator also asks adjacent images to share a line of
the cross, the discrete trace of a continuous path that can only change
lines where two of them meet.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .exactset import Point, as_rational, closed

DEFAULT_BUDGET = 2_000_000


class EnumerationOverflow(RuntimeError):
    pass


@dataclass(frozen=True)
class GridFn:
    """Images listed row-major: cell ``(i, j)`` is ``images[j * n + i]``."""

    n: int
    images: tuple
    domain: tuple = (closed(0, 1), closed(0, 1))

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if self.n < 1:
            raise ValueError("resolution must be positive")
        if len(self.images) != self.n * self.n:
            raise ValueError(f"expected {self.n * self.n} images, got {len(self.images)}")
        U, V = self.domain
        if U.is_degenerate or V.is_degenerate:
            raise ValueError("domain rectangle must have nonempty interior")

    @classmethod
    def sample(cls, n: int, fn, domain=None) -> "GridFn":
        """Evaluate ``fn(center) -> Point`` on every cell center."""
        g = cls(n, [Point(0, 0)] * (n * n), domain or (closed(0, 1), closed(0, 1)))
        return cls(n, [fn(g.center(i, j)) for j in range(n) for i in range(n)], g.domain)

    def center(self, i: int, j: int) -> Point:
        U, V = self.domain
        return Point(U.lo + (U.hi - U.lo) * Fraction(2 * i + 1, 2 * self.n),
                     V.lo + (V.hi - V.lo) * Fraction(2 * j + 1, 2 * self.n))

    def image(self, i: int, j: int) -> Point:
        return self.images[j * self.n + i]

    def cells(self) -> Iterator[tuple[int, int]]:
        for j in range(self.n):
            for i in range(self.n):
                yield i, j

    def adjacent_pairs(self) -> Iterator[tuple[tuple, tuple]]:
        for i, j in self.cells():
            if i + 1 < self.n:
                yield (i, j), (i + 1, j)
            if j + 1 < self.n:
                yield (i, j), (i, j + 1)

    def to_json(self) -> dict:
        U, V = self.domain
        return {"n": self.n, "domain": {"x": U.to_json(), "y": V.to_json()},
                "images": [p.to_json() for p in self.images]}


def _close(p: Point, q: Point, step: Fraction) -> bool:
    return abs(p.x - q.x) <= step and abs(p.y - q.y) <= step


def continuity_violation(f: GridFn) -> tuple | None:
    """First adjacent pair whose images differ by more than ``1/N``."""
    step = Fraction(1, f.n)
    for a, b in f.adjacent_pairs():
        if not _close(f.image(*a), f.image(*b), step):
            return a, b
    return None


@dataclass(frozen=True)
class CrossCheck:
    ok: bool
    cell: tuple | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "cell": None if self.cell is None else list(self.cell)}


def check_cross_property(f: GridFn) -> CrossCheck:
    """Every image must share its x or its y with the cell center."""
    for i, j in f.cells():
        c, img = f.center(i, j), f.image(i, j)
        if img.x != c.x and img.y != c.y:
            return CrossCheck(False, (i, j))
    return CrossCheck(True)


ROW, COLUMN, VIOLATION = "row_collapse", "column_collapse", "violation"


@dataclass(frozen=True)
class Classification:
    kind: str
    level: Fraction | None = None
    violation: str | None = None
    witness: tuple = ()
    both_collapse: bool = False

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "level": None if self.level is None else str(self.level),
            "violation": self.violation,
            "witness": [list(c) for c in self.witness],
            "both_collapse": self.both_collapse,
        }


def classify_cross_mapping(f: GridFn, A: Iterable, B: Iterable) -> Classification:
    """Column collapse onto some ``a in A``, row collapse onto some ``b in B``,
    or the violated hypothesis (``cross``, ``image``) or conclusion (``dichotomy``)."""
    A = {as_rational(a) for a in A}
    B = {as_rational(b) for b in B}
    check = check_cross_property(f)
    if not check.ok:
        return Classification(VIOLATION, violation="cross", witness=(check.cell,))
    for i, j in f.cells():
        img = f.image(i, j)
        if img.x not in A and img.y not in B:
            return Classification(VIOLATION, violation="image", witness=((i, j),))
    xs = {img.x for img in f.images}
    ys = {img.y for img in f.images}
    col = len(xs) == 1 and next(iter(xs)) in A
    row = len(ys) == 1 and next(iter(ys)) in B
    if col:
        return Classification(COLUMN, level=next(iter(xs)), both_collapse=row)
    if row:
        return Classification(ROW, level=next(iter(ys)))
    first = f.images[0]
    cells = list(f.cells())
    off_x = next(c for c in cells if f.image(*c).x != first.x or first.x not in A)
    off_y = next(c for c in cells if f.image(*c).y != first.y or first.y not in B)
    return Classification(VIOLATION, violation="dichotomy", witness=(off_x, off_y))


def verify_collapse(f: GridFn, result: Classification) -> bool:
    """Re-check a collapse verdict by scanning images directly."""
    if result.kind == COLUMN:
        return all(img.x == result.level for img in f.images)
    if result.kind == ROW:
        return all(img.y == result.level for img in f.images)
    return False


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------


def budget_from_env() -> int:
    raw = os.environ.get("CROSSTOPO_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def allowed_images(center: Point, levels: list[Fraction], A: set, B: set) -> list[Point]:
    out = []
    for u in levels:
        for v in levels:
            if (u == center.x or v == center.y) and (u in A or v in B):
                out.append(Point(u, v))
    return out


def line_adjacent(p: Point, q: Point, A: set, B: set) -> bool:
    return (p.x == q.x and p.x in A) or (p.y == q.y and p.y in B)


def enumerate_cross_mappings(n: int, A: Iterable, B: Iterable, budget: int | None = None,
                             domain=None) -> Iterator[GridFn]:
    """All raster-continuous cross-mappings into ``cross(A x B)``.

    Image coordinates range over the cell centers together with ``A`` and
    ``B``.  Maps are produced in lexicographic order of their image lists.
    """
    A = {as_rational(a) for a in A}
    B = {as_rational(b) for b in B}
    if n > 4 or len(A) > 2 or len(B) > 2:
        raise ValueError("enumeration is limited to N <= 4 and |A|, |B| <= 2")
    budget = budget_from_env() if budget is None else budget
    proto = GridFn(n, [Point(0, 0)] * (n * n), domain or (closed(0, 1), closed(0, 1)))
    centers = {proto.center(i, j).x for i in range(n) for j in range(1)}
    centers |= {proto.center(0, j).y for j in range(n)}
    levels = sorted(centers | A | B)
    options = [allowed_images(proto.center(i, j), levels, A, B) for j in range(n) for i in range(n)]
    step = Fraction(1, n)

    def fits(k: int, img: Point, chosen: list) -> bool:
        i, j = k % n, k // n
        for nb in ((k - 1) if i > 0 else None, (k - n) if j > 0 else None):
            if nb is None:
                continue
            other = chosen[nb]
            if not (_close(img, other, step) and line_adjacent(img, other, A, B)):
                return False
        return True

    produced = 0
    chosen: list = []

    def walk(k: int):
        nonlocal produced
        if k == n * n:
            produced += 1
            if produced > budget:
                raise EnumerationOverflow(f"more than {budget} maps; raise CROSSTOPO_BUDGET")
            yield GridFn(n, tuple(chosen), proto.domain)
            return
        for img in options[k]:
            if fits(k, img, chosen):
                chosen.append(img)
                yield from walk(k + 1)
                chosen.pop()

    yield from walk(0)


def count_cross_mappings(n: int, A: Iterable, B: Iterable, budget: int | None = None) -> int:
    return sum(1 for _ in enumerate_cross_mappings(n, A, B, budget))
