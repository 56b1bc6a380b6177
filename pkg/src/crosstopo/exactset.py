"""Exact rational geometry of the unit square and the symbolic set algebra.

Every predicate here is a decision over :class:`fractions.Fraction` values,
never a floating point approximation.  Sets are described by
:class:`SetDesc`: a finite union of boxes, axis-parallel segments, single
points and sequence traces, minus a finite set of deleted points.

Openness questions are decided on the *arrangement* of a description: the
finite grid spanned by every coordinate the non-trace primitives mention.
Non-trace membership is constant on each open cell of that grid (vertices,
open edges, open faces), so local questions reduce to finitely many cell
lookups plus exact reasoning about sequence tails.
"""

from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Union

Rational = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class ValidationError(ValueError):
    """A malformed value or description; the message names the offender."""


class UndecidedError(RuntimeError):
    """Raised when a query falls outside the fragment decided exactly."""


def as_rational(value: Rational) -> Fraction:
    """Coerce ``value`` to a Fraction; strings must look like ``"num/den"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValidationError(f"not a rational literal: {value!r}")
        num, _, den = value.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise ValidationError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise ValidationError(f"not a rational: {value!r}")


def fmt(q: Fraction) -> str:
    return str(q)


# ---------------------------------------------------------------------------
# Points and crosses
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        x, y = as_rational(self.x), as_rational(self.y)
        if not (ZERO <= x <= ONE and ZERO <= y <= ONE):
            raise ValidationError(f"point ({x}, {y}) outside the unit square")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({self.x}, {self.y})"

    def to_json(self) -> list[str]:
        return [fmt(self.x), fmt(self.y)]


def pt(x: Rational, y: Rational) -> Point:
    return Point(as_rational(x), as_rational(y))


@dataclass(frozen=True)
class CrossSet:
    """Union of finitely many full rows (y-levels) and columns (x-levels)."""

    rows: frozenset = frozenset()
    cols: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rows", frozenset(as_rational(r) for r in self.rows))
        object.__setattr__(self, "cols", frozenset(as_rational(c) for c in self.cols))

    def __contains__(self, p: Point) -> bool:
        return p.y in self.rows or p.x in self.cols

    def __or__(self, other: "CrossSet") -> "CrossSet":
        return CrossSet(self.rows | other.rows, self.cols | other.cols)

    @property
    def is_empty(self) -> bool:
        return not self.rows and not self.cols

    def to_json(self) -> dict:
        return {
            "rows": [fmt(r) for r in sorted(self.rows)],
            "cols": [fmt(c) for c in sorted(self.cols)],
        }


def cross_of_point(p: Point) -> CrossSet:
    return CrossSet(rows=frozenset([p.y]), cols=frozenset([p.x]))


def cross_of_finite(points: Iterable[Point]) -> CrossSet:
    points = list(points)
    return CrossSet(
        rows=frozenset(p.y for p in points), cols=frozenset(p.x for p in points)
    )


# ---------------------------------------------------------------------------
# Intervals and tail formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo > hi or (lo == hi and not (self.lo_closed and self.hi_closed)):
            raise ValidationError(f"empty interval {self}")

    def __contains__(self, v: Fraction) -> bool:
        if v < self.lo or v > self.hi:
            return False
        if v == self.lo and not self.lo_closed:
            return False
        if v == self.hi and not self.hi_closed:
            return False
        return True

    @property
    def is_closed(self) -> bool:
        return self.lo_closed and self.hi_closed

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self):
        return (
            ("[" if self.lo_closed else "(")
            + f"{self.lo},{self.hi}"
            + ("]" if self.hi_closed else ")")
        )

    def to_json(self) -> dict:
        return {
            "lo": fmt(self.lo),
            "hi": fmt(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }


def closed(lo: Rational, hi: Rational) -> Interval:
    return Interval(as_rational(lo), as_rational(hi), True, True)


def open_(lo: Rational, hi: Rational) -> Interval:
    return Interval(as_rational(lo), as_rational(hi), False, False)


@dataclass(frozen=True)
class TailFormula:
    """The coordinate formula ``c + a/(n + b)`` with ``b >= 0``.

    ``a == 0`` gives a constant coordinate; otherwise the formula is strictly
    monotone in ``n`` and converges to ``c`` without ever reaching it.
    """

    c: Fraction
    a: Fraction = ZERO
    b: Fraction = ZERO

    def __post_init__(self):
        for name in ("c", "a", "b"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.b < 0:
            raise ValidationError(f"tail formula offset b={self.b} must be >= 0")

    @property
    def is_constant(self) -> bool:
        return self.a == 0

    @property
    def limit(self) -> Fraction:
        return self.c

    def __call__(self, n: int) -> Fraction:
        if self.a == 0:
            return self.c
        return self.c + self.a / (n + self.b)

    def index_of(self, v: Fraction, n_min: int) -> int | None:
        """The unique ``n >= n_min`` with value ``v``; None for constants or misses."""
        if self.a == 0 or v == self.c:
            return None
        n = self.a / (v - self.c) - self.b
        if n.denominator == 1 and n >= n_min:
            return int(n)
        return None

    def n_range(self, iv: Interval, n_min: int) -> tuple[int, int | None] | None:
        """Integer range ``[first, last]`` of ``n >= n_min`` with value in ``iv``.

        ``last`` is None for an unbounded range.  Returns None when empty.
        """
        if self.a == 0:
            return (n_min, None) if self.c in iv else None
        if self.a < 0:
            # reflect to the decreasing case
            mirrored = TailFormula(-self.c, -self.a, self.b)
            iv = Interval(-iv.hi, -iv.lo, iv.hi_closed, iv.lo_closed)
            return mirrored.n_range(iv, n_min)
        # value = c + g(n), g = a/(n+b) > 0 strictly decreasing to 0
        first, last = n_min, None
        top = iv.hi - self.c
        if top <= 0:
            return None
        t = self.a / top - self.b
        first = max(first, math.ceil(t) if iv.hi_closed else math.floor(t) + 1)
        bottom = iv.lo - self.c
        if bottom > 0:
            t = self.a / bottom - self.b
            last = math.floor(t) if iv.lo_closed else math.ceil(t) - 1
        if last is not None and last < first:
            return None
        return first, last

    def to_json(self) -> dict:
        return {"c": fmt(self.c), "a": fmt(self.a), "b": fmt(self.b)}


def constant(c: Rational) -> TailFormula:
    return TailFormula(as_rational(c))


def _intersect_ranges(r1, r2):
    if r1 is None or r2 is None:
        return None
    first = max(r1[0], r2[0])
    ends = [e for e in (r1[1], r2[1]) if e is not None]
    last = min(ends) if ends else None
    if last is not None and last < first:
        return None
    return first, last


@dataclass(frozen=True)
class SeqSpec:
    """Sequence ``z_1, z_2, ...``: an explicit prefix, then closed-form tails.

    Index ``n`` is 1-based; the tail formulas apply for ``n > len(prefix)``.
    """

    prefix: tuple = ()
    tail_x: TailFormula = field(default_factory=lambda: constant(0))
    tail_y: TailFormula = field(default_factory=lambda: constant(0))

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        n0 = self.tail_start
        for name, f in (("tail_x", self.tail_x), ("tail_y", self.tail_y)):
            for v in (f(n0), f.limit):
                if not ZERO <= v <= ONE:
                    raise ValidationError(
                        f"{name} leaves the unit square (value {v} at n={n0} or limit)"
                    )

    @property
    def tail_start(self) -> int:
        return len(self.prefix) + 1

    @property
    def limit(self) -> Point:
        return Point(self.tail_x.limit, self.tail_y.limit)

    @property
    def tail_constant(self) -> bool:
        return self.tail_x.is_constant and self.tail_y.is_constant

    def __getitem__(self, n: int) -> Point:
        if n < 1:
            raise IndexError(n)
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return Point(self.tail_x(n), self.tail_y(n))

    def take(self, count: int) -> list[Point]:
        return [self[n] for n in range(1, count + 1)]

    def tail_indices_of(self, p: Point) -> list[int] | None:
        """Tail indices hitting ``p``; None means every tail index does."""
        n0 = self.tail_start
        fx, fy = self.tail_x, self.tail_y
        if fx.is_constant and fy.is_constant:
            return None if (fx.c, fy.c) == (p.x, p.y) else []
        if fx.is_constant:
            if p.x != fx.c:
                return []
            n = fy.index_of(p.y, n0)
        else:
            n = fx.index_of(p.x, n0)
            if n is not None and fy(n) != p.y:
                n = None
        return [] if n is None else [n]

    def contains(self, p: Point) -> bool:
        if p in self.prefix:
            return True
        hits = self.tail_indices_of(p)
        return hits is None or bool(hits)

    def tail_range_in(self, xs: Interval, ys: Interval) -> tuple[int, int | None] | None:
        return _intersect_ranges(
            self.tail_x.n_range(xs, self.tail_start),
            self.tail_y.n_range(ys, self.tail_start),
        )

    def to_json(self) -> dict:
        return {
            "prefix": [p.to_json() for p in self.prefix],
            "tail_x": self.tail_x.to_json(),
            "tail_y": self.tail_y.to_json(),
        }


# ---------------------------------------------------------------------------
# Primitives
# ---------------------------------------------------------------------------

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def _check_in_square(iv: Interval, what: str):
    if iv.lo < 0 or iv.hi > 1:
        raise ValidationError(f"{what} interval {iv} leaves [0,1]")


@dataclass(frozen=True)
class Box:
    x: Interval
    y: Interval
    kind = "box"

    def __post_init__(self):
        if self.x.is_degenerate or self.y.is_degenerate:
            raise ValidationError(f"box {self.x}x{self.y} is degenerate; use a segment")
        _check_in_square(self.x, "box x")
        _check_in_square(self.y, "box y")

    def contains(self, p: Point) -> bool:
        return p.x in self.x and p.y in self.y

    @property
    def is_closed(self) -> bool:
        return self.x.is_closed and self.y.is_closed

    def levels(self):
        return (self.x.lo, self.x.hi), (self.y.lo, self.y.hi)

    def __str__(self):
        return f"Box({self.x} x {self.y})"

    def to_json(self) -> dict:
        return {"kind": "box", "x": self.x.to_json(), "y": self.y.to_json()}


@dataclass(frozen=True)
class Segment:
    """Axis-parallel segment: ``horizontal`` means ``y = level``, x in ``span``."""

    axis: str
    level: Fraction
    span: Interval
    kind = "segment"

    def __post_init__(self):
        if self.axis not in (HORIZONTAL, VERTICAL):
            raise ValidationError(f"segment axis must be horizontal|vertical, got {self.axis!r}")
        object.__setattr__(self, "level", as_rational(self.level))
        if not ZERO <= self.level <= ONE:
            raise ValidationError(f"segment level {self.level} outside [0,1]")
        if self.span.is_degenerate:
            raise ValidationError(f"segment span {self.span} is degenerate; use a point")
        _check_in_square(self.span, "segment")

    def contains(self, p: Point) -> bool:
        if self.axis == HORIZONTAL:
            return p.y == self.level and p.x in self.span
        return p.x == self.level and p.y in self.span

    @property
    def is_closed(self) -> bool:
        return self.span.is_closed

    def levels(self):
        ends = (self.span.lo, self.span.hi)
        if self.axis == HORIZONTAL:
            return ends, (self.level,)
        return (self.level,), ends

    def __str__(self):
        if self.axis == HORIZONTAL:
            return f"Segment({self.span} x {{{self.level}}})"
        return f"Segment({{{self.level}}} x {self.span})"

    def to_json(self) -> dict:
        return {
            "kind": "segment",
            "axis": self.axis,
            "level": fmt(self.level),
            "span": self.span.to_json(),
        }


def hseg(level: Rational, span: Interval) -> Segment:
    return Segment(HORIZONTAL, as_rational(level), span)


def vseg(level: Rational, span: Interval) -> Segment:
    return Segment(VERTICAL, as_rational(level), span)


@dataclass(frozen=True)
class SinglePoint:
    at: Point
    kind = "point"

    def contains(self, p: Point) -> bool:
        return p == self.at

    is_closed = True

    def levels(self):
        return (self.at.x,), (self.at.y,)

    def __str__(self):
        return f"SinglePoint{tuple(map(str, self.at))}"

    def to_json(self) -> dict:
        return {"kind": "point", "at": self.at.to_json()}


@dataclass(frozen=True)
class SeqTrace:
    seq: SeqSpec
    kind = "trace"

    def contains(self, p: Point) -> bool:
        return self.seq.contains(p)

    def levels(self):
        return (), ()

    def __str__(self):
        return f"SeqTrace(limit={tuple(map(str, self.seq.limit))})"

    def to_json(self) -> dict:
        return {"kind": "trace", "seq": self.seq.to_json()}


Primitive = Union[Box, Segment, SinglePoint, SeqTrace]


@dataclass(frozen=True)
class SetDesc:
    """``union(parts) minus deletions`` inside the unit square."""

    parts: tuple = ()
    deletions: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "deletions", frozenset(self.deletions))
        for i, part in enumerate(self.parts):
            if not isinstance(part, (Box, Segment, SinglePoint, SeqTrace)):
                raise ValidationError(f"part {i} is not a primitive: {part!r}")

    @property
    def solids(self) -> tuple:
        return tuple(p for p in self.parts if not isinstance(p, SeqTrace))

    @property
    def traces(self) -> tuple:
        return tuple(p.seq for p in self.parts if isinstance(p, SeqTrace))

    def solid_contains(self, p: Point) -> bool:
        """Membership in the non-trace primitives, ignoring deletions."""
        return any(part.contains(p) for part in self.solids)

    def contains(self, p: Point) -> bool:
        if p in self.deletions:
            return False
        return any(part.contains(p) for part in self.parts)

    __contains__ = contains

    def levels(self) -> tuple[set, set]:
        xs, ys = set(), set()
        for part in self.parts:
            lx, ly = part.levels()
            xs.update(lx)
            ys.update(ly)
        for d in self.deletions:
            xs.add(d.x)
            ys.add(d.y)
        return xs, ys

    def __or__(self, other: "SetDesc") -> "SetDesc":
        # deletions of one side may be restored by the other side
        dels = {d for d in self.deletions | other.deletions if not (self.contains(d) or other.contains(d))}
        return SetDesc(self.parts + other.parts, frozenset(dels))

    def to_json(self) -> dict:
        return {
            "parts": [p.to_json() for p in self.parts],
            "deletions": [d.to_json() for d in sorted(self.deletions)],
        }


def contains(s: SetDesc, p: Point) -> bool:
    return s.contains(p)


def unit_square() -> SetDesc:
    return SetDesc((Box(closed(0, 1), closed(0, 1)),))


EMPTY = SetDesc()


# ---------------------------------------------------------------------------
# Arrangement: the finite cell complex of a description
# ---------------------------------------------------------------------------

VERTEX, HEDGE, VEDGE, FACE = "vertex", "hedge", "vedge", "face"


class Arrangement:
    """Grid cells spanned by the coordinates of one or more descriptions.

    Cells are keyed ``(kind, i, j)``.  A ``hedge`` is the open edge
    ``(xs[i], xs[i+1]) x {ys[j]}``, a ``vedge`` is ``{xs[i]} x (ys[j], ys[j+1])``
    and a ``face`` is the open rectangle ``(xs[i], xs[i+1]) x (ys[j], ys[j+1])``.
    """

    def __init__(self, *descs: SetDesc, extra: Iterable[Point] = ()):
        xs, ys = {ZERO, ONE}, {ZERO, ONE}
        for s in descs:
            lx, ly = s.levels()
            xs |= lx
            ys |= ly
        for p in extra:
            xs.add(p.x)
            ys.add(p.y)
        self.xs = sorted(xs)
        self.ys = sorted(ys)

    @property
    def kx(self) -> int:
        return len(self.xs) - 1

    @property
    def ky(self) -> int:
        return len(self.ys) - 1

    def cells(self, kind: str) -> Iterator[tuple]:
        ni = self.kx + (kind in (VERTEX, VEDGE))
        nj = self.ky + (kind in (VERTEX, HEDGE))
        for j in range(nj):
            for i in range(ni):
                yield kind, i, j

    def all_cells(self) -> Iterator[tuple]:
        for kind in (VERTEX, HEDGE, VEDGE, FACE):
            yield from self.cells(kind)

    def sample(self, cell) -> Point:
        kind, i, j = cell
        xs, ys = self.xs, self.ys
        x = xs[i] if kind in (VERTEX, VEDGE) else (xs[i] + xs[i + 1]) / 2
        y = ys[j] if kind in (VERTEX, HEDGE) else (ys[j] + ys[j + 1]) / 2
        return Point(x, y)

    def intervals(self, cell) -> tuple[Interval, Interval]:
        kind, i, j = cell
        xs, ys = self.xs, self.ys
        xi = closed(xs[i], xs[i]) if kind in (VERTEX, VEDGE) else open_(xs[i], xs[i + 1])
        yi = closed(ys[j], ys[j]) if kind in (VERTEX, HEDGE) else open_(ys[j], ys[j + 1])
        return xi, yi

    def vertex_of(self, p: Point) -> tuple:
        return VERTEX, self.xs.index(p.x), self.ys.index(p.y)

    def locate(self, p: Point) -> tuple:
        """The cell containing ``p``."""
        i = bisect.bisect_right(self.xs, p.x) - 1
        j = bisect.bisect_right(self.ys, p.y) - 1
        on_x = self.xs[i] == p.x
        on_y = self.ys[j] == p.y
        if on_x and on_y:
            return VERTEX, i, j
        if on_y:
            return HEDGE, i, j
        if on_x:
            return VEDGE, i, j
        return FACE, i, j

    def edges_at(self, cell) -> list[tuple]:
        _, i, j = cell
        out = []
        if i > 0:
            out.append((HEDGE, i - 1, j))
        if i < self.kx:
            out.append((HEDGE, i, j))
        if j > 0:
            out.append((VEDGE, i, j - 1))
        if j < self.ky:
            out.append((VEDGE, i, j))
        return out

    def faces_at(self, cell) -> list[tuple]:
        kind, i, j = cell
        out = []
        if kind == VERTEX:
            for di in (-1, 0):
                for dj in (-1, 0):
                    if 0 <= i + di < self.kx and 0 <= j + dj < self.ky:
                        out.append((FACE, i + di, j + dj))
        elif kind == HEDGE:
            for dj in (-1, 0):
                if 0 <= j + dj < self.ky:
                    out.append((FACE, i, j + dj))
        elif kind == VEDGE:
            for di in (-1, 0):
                if 0 <= i + di < self.kx:
                    out.append((FACE, i + di, j))
        return out


def _trace_hit_in_cell(seq: SeqSpec, arr: Arrangement, cell) -> Point | None:
    """A point of ``seq`` lying in the open cell, if any."""
    xi, yi = arr.intervals(cell)
    for p in seq.prefix:
        if p.x in xi and p.y in yi:
            return p
    rng = seq.tail_range_in(xi, yi)
    if rng is None:
        return None
    return seq[rng[0]]


@dataclass(frozen=True)
class LocalFailure:
    """A member point with no neighborhood of the requested shape."""

    point: Point
    reason: str

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "reason": self.reason}


def _tail_accumulates(seq: SeqSpec, topology: str) -> bool:
    """Whether the tail has infinitely many distinct points that a
    neighborhood of the requested shape around the limit must meet."""
    fx, fy = seq.tail_x, seq.tail_y
    if topology == "tau":
        return not (fx.is_constant and fy.is_constant)
    return fx.is_constant != fy.is_constant


class LocalAnalysis:
    """Cell-by-cell decision of tau- or gamma-openness of a set or its complement.

    ``topology`` is ``"tau"`` (product boxes) or ``"gamma"`` (crosses).
    """

    def __init__(self, s: SetDesc, topology: str = "tau", complement: bool = False,
                 extra: Iterable[Point] = ()):
        if topology not in ("tau", "gamma"):
            raise ValueError(f"unknown topology {topology!r}")
        self.s = s
        self.topology = topology
        self.complement = complement
        self.arr = Arrangement(s, extra=extra)
        self._solid: dict = {}

    def solid(self, cell) -> bool:
        if cell not in self._solid:
            self._solid[cell] = self.s.solid_contains(self.arr.sample(cell))
        return self._solid[cell]

    def open_member(self, cell) -> bool:
        """Whether all points of an open cell, traces aside, are members."""
        return self.solid(cell) != self.complement

    def member(self, p: Point) -> bool:
        return self.s.contains(p) != self.complement

    def required_cells(self, cell) -> list[tuple]:
        if cell[0] == VERTEX:
            cells = self.arr.edges_at(cell)
            if self.topology == "tau":
                cells += self.arr.faces_at(cell)
            return cells
        return self.arr.faces_at(cell)

    def _limit_failure(self, p: Point | None = None) -> LocalFailure | None:
        if not self.complement:
            return None
        for seq in self.s.traces:
            if not _tail_accumulates(seq, self.topology):
                continue
            lim = seq.limit
            if (p is None or lim == p) and self.member(lim):
                return LocalFailure(lim, "sequence tail accumulates at this member point")
        return None

    def interior_at(self, p: Point) -> LocalFailure | None:
        """None when ``p`` is an interior member; otherwise the failure."""
        if not self.member(p):
            return LocalFailure(p, "not a member")
        arr = self.arr
        if p.x not in arr.xs or p.y not in arr.ys:
            arr = self.arr = Arrangement(self.s, extra=[p])
            self._solid.clear()
        cell = arr.vertex_of(p)
        for c in self.required_cells(cell):
            if not self.open_member(c):
                return LocalFailure(arr.sample(c), f"neighborhood meets non-member {c[0]}")
        return self._limit_failure(p)

    def first_failure(self) -> LocalFailure | None:
        arr = self.arr
        for cell in arr.cells(VERTEX):
            p = arr.sample(cell)
            if not self.member(p):
                continue
            for c in self.required_cells(cell):
                if not self.open_member(c):
                    return LocalFailure(p, f"adjacent {c[0]} at {arr.sample(c)!r} is not inside")
        for kind in (HEDGE, VEDGE, FACE):
            for cell in arr.cells(kind):
                if self.open_member(cell):
                    for c in self.required_cells(cell):
                        if not self.open_member(c):
                            return LocalFailure(arr.sample(cell), f"adjacent face at {arr.sample(c)!r} is not inside")
                elif not self.complement:
                    for seq in self.s.traces:
                        hit = _trace_hit_in_cell(seq, arr, cell)
                        if hit is not None:
                            return LocalFailure(hit, f"isolated sequence point inside a non-member {kind}")
        return self._limit_failure()

    def is_open(self) -> bool:
        return self.first_failure() is None

    def radius(self, p: Point) -> Fraction | None:
        """A rational radius of a neighborhood of ``p`` inside the set, if one exists.

        Direct mode: any radius below the distance to the next grid line works.
        Complement mode additionally stays clear of sequence points seen by
        the neighborhood shape (the whole box for tau, the two arms for gamma).
        """
        if self.interior_at(p) is not None:
            return None
        xs, ys = self.arr.xs, self.arr.ys
        r = min([abs(v - p.x) for v in xs if v != p.x] + [abs(v - p.y) for v in ys if v != p.y])
        if self.complement:
            for seq in self.s.traces:
                r = self._clear_of(seq, p, r)
        return r / 2

    def _windows(self, p: Point, r: Fraction) -> list[tuple[Interval, Interval]]:
        xi = Interval(max(ZERO, p.x - r), min(ONE, p.x + r))
        yi = Interval(max(ZERO, p.y - r), min(ONE, p.y + r))
        if self.topology == "tau":
            return [(xi, yi)]
        return [(xi, closed(p.y, p.y)), (closed(p.x, p.x), yi)]

    def _clear_of(self, seq: SeqSpec, p: Point, r: Fraction) -> Fraction:
        def dist(q):
            return max(abs(q.x - p.x), abs(q.y - p.y))

        lim = seq.limit
        for xi, yi in self._windows(p, r):
            if lim.x in xi and lim.y in yi and not seq.tail_constant and dist(lim) > 0:
                r = min(r, dist(lim) / 2)
        for xi, yi in self._windows(p, r):
            hits = [q for q in seq.prefix if q.x in xi and q.y in yi]
            rng = seq.tail_range_in(xi, yi)
            if rng is not None:
                first, last = rng
                last = first if last is None else last
                hits += [seq[n] for n in range(first, last + 1)]
            for q in hits:
                if q != p:
                    r = min(r, dist(q))
        return r


def is_tau_open(s: SetDesc) -> bool:
    return LocalAnalysis(s, "tau").is_open()


def is_tau_closed(s: SetDesc) -> bool:
    return LocalAnalysis(s, "tau", complement=True).is_open()


def tau_radius(s: SetDesc, p: Point) -> Fraction | None:
    return LocalAnalysis(s, "tau", extra=[p]).radius(p)


# ---------------------------------------------------------------------------
# Inclusion
# ---------------------------------------------------------------------------


def _escape_point(cell_iv: tuple[Interval, Interval], avoid) -> Point:
    """A point of the cell for which ``avoid`` is false.

    Only countably many sequence points can be avoided inside an uncountable
    cell, so a short walk over distinct candidates finds one.
    """
    xi, yi = cell_iv
    for k in range(2, 200):
        x = xi.lo if xi.is_degenerate else xi.lo + (xi.hi - xi.lo) / k
        y = yi.lo if yi.is_degenerate else yi.hi - (yi.hi - yi.lo) / (k + 1)
        q = Point(x, y)
        if not avoid(q):
            return q
    raise UndecidedError("no escape point found")


def first_not_in(a: SetDesc, b: SetDesc) -> Point | None:
    """A point of ``a`` outside ``b``, or None when ``a`` is a subset of ``b``."""
    arr = Arrangement(a, b)
    for cell in arr.cells(VERTEX):
        p = arr.sample(cell)
        if a.contains(p) and not b.contains(p):
            return p
    for kind in (HEDGE, VEDGE, FACE):
        for cell in arr.cells(kind):
            p = arr.sample(cell)
            if a.solid_contains(p):
                if not b.solid_contains(p):
                    return _escape_point(arr.intervals(cell), b.contains)
                continue
            if b.solid_contains(p):
                continue
            for seq in a.traces:
                q = _trace_outside(seq, arr, cell, b)
                if q is not None:
                    return q
    return None


def _trace_outside(seq: SeqSpec, arr: Arrangement, cell, b: SetDesc) -> Point | None:
    xi, yi = arr.intervals(cell)
    for p in seq.prefix:
        if p.x in xi and p.y in yi and not b.contains(p):
            return p
    rng = seq.tail_range_in(xi, yi)
    if rng is None:
        return None
    first, last = rng
    if not b.traces:
        return seq[first]
    stop = last if last is not None else first + 63
    for n in range(first, stop + 1):
        if not b.contains(seq[n]):
            return seq[n]
    if last is None:
        raise UndecidedError("infinitely many sequence points rely on another sequence trace")
    return None


def is_subset(a: SetDesc, b: SetDesc) -> bool:
    return first_not_in(a, b) is None


def same_set(a: SetDesc, b: SetDesc) -> bool:
    return is_subset(a, b) and is_subset(b, a)
