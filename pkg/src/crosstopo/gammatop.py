"""Decision procedures for the cross-topology on the unit square.

A set is gamma-open when every member point carries a full cross of some
positive radius inside the set.  Compact sets of this topology are exactly
the closed sets covered by finitely many rows and columns, which is what
makes gamma-compactness decidable here: the cover search is finite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactset import (
    Box,
    CrossSet,
    HORIZONTAL,
    Interval,
    LocalAnalysis,
    LocalFailure,
    Point,
    SeqSpec,
    Segment,
    SetDesc,
    SinglePoint,
    as_rational,
    cross_of_finite,
    cross_of_point,
    fmt,
    hseg,
    same_set,
    vseg,
)

DIRECT, COMPLEMENT = "direct", "complement"


class PreconditionError(ValueError):
    pass


def _mode_flag(mode: str) -> bool:
    if mode not in (DIRECT, COMPLEMENT):
        raise ValueError(f"mode must be {DIRECT!r} or {COMPLEMENT!r}, got {mode!r}")
    return mode == COMPLEMENT


def gamma_failure(s: SetDesc, mode: str = DIRECT) -> LocalFailure | None:
    """The first member point without a cross neighborhood, or None."""
    return LocalAnalysis(s, "gamma", complement=_mode_flag(mode)).first_failure()


def is_gamma_open(s: SetDesc, mode: str = DIRECT) -> bool:
    return gamma_failure(s, mode) is None


def gamma_radius(s: SetDesc, p: Point, mode: str = DIRECT) -> Fraction | None:
    """Radius ``r`` with both arms of the closed ``r``-cross at ``p`` inside the set."""
    return LocalAnalysis(s, "gamma", complement=_mode_flag(mode), extra=[p]).radius(p)


def gamma_interior_contains(s: SetDesc, p: Point) -> bool:
    return LocalAnalysis(s, "gamma", extra=[p]).interior_at(p) is None


def gamma_closure_contains(s: SetDesc, p: Point) -> bool:
    return LocalAnalysis(s, "gamma", complement=True, extra=[p]).interior_at(p) is not None


# ---------------------------------------------------------------------------
# Discreteness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteResult:
    certified: bool
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {"certified": self.certified, "counterexample": self.counterexample}


def _collision(i, j, coord, value) -> DiscreteResult:
    return DiscreteResult(False, {"indices": [i, j], "coordinate": coord, "value": fmt(value)})


def verify_gamma_discrete(points: SeqSpec | Sequence[Point]) -> DiscreteResult:
    """Certify that no two terms share an x or a y coordinate.

    Indices in counterexamples are 1-based term numbers.
    """
    if isinstance(points, SeqSpec):
        return _discrete_seq(points)
    return _discrete_finite(list(points))


def _discrete_finite(pts: list[Point]) -> DiscreteResult:
    for coord in ("x", "y"):
        seen: dict = {}
        for n, p in enumerate(pts, 1):
            v = getattr(p, coord)
            if v in seen:
                return _collision(seen[v], n, coord, v)
            seen[v] = n
    return DiscreteResult(True)


def _discrete_seq(seq: SeqSpec) -> DiscreteResult:
    found = _discrete_finite(list(seq.prefix))
    if not found.certified:
        return found
    n0 = seq.tail_start
    for coord, f in (("x", seq.tail_x), ("y", seq.tail_y)):
        if f.is_constant:
            return _collision(n0, n0 + 1, coord, f.c)
    for i, p in enumerate(seq.prefix, 1):
        for coord, f in (("x", seq.tail_x), ("y", seq.tail_y)):
            n = f.index_of(getattr(p, coord), n0)
            if n is not None:
                return _collision(i, n, coord, getattr(p, coord))
    return DiscreteResult(True)


# ---------------------------------------------------------------------------
# Local coincidence of tau and gamma on a finite cross
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Coincidence:
    U: Interval
    V: Interval
    c: Point
    verified: bool

    def to_json(self) -> dict:
        return {"U": self.U.to_json(), "V": self.V.to_json(), "c": self.c.to_json(),
                "verified": self.verified}


def _isolating_interval(v: Fraction, levels: set) -> Interval:
    below = [a for a in levels if a < v]
    above = [a for a in levels if a > v]
    lo = (max(below) + v) / 2 if below else Fraction(0)
    hi = (min(above) + v) / 2 if above else Fraction(1)
    return Interval(lo, hi, lo_closed=(v == 0), hi_closed=(v == 1))


def _level_outside(iv: Interval, v: Fraction, levels: set) -> Fraction:
    inside = [a for a in levels if a in iv]
    if inside:
        return inside[0]
    if levels:
        return min(levels, key=lambda a: (abs(a - v), a))
    return iv.lo if not iv.lo_closed else iv.hi


def cross_window(cols: Iterable[Fraction], rows: Iterable[Fraction], U: Interval, V: Interval) -> SetDesc:
    """The finite cross ``cols x [0,1] u [0,1] x rows`` clipped to ``U x V``."""
    parts = [vseg(a, V) for a in sorted(set(cols)) if a in U]
    parts += [hseg(b, U) for b in sorted(set(rows)) if b in V]
    return SetDesc(parts)


def local_coincidence_neighborhood(A: Iterable, B: Iterable, p: Point) -> Coincidence:
    """Window ``U x V`` around ``p`` on which the finite cross looks like one cross.

    ``A`` are the column levels, ``B`` the row levels of ``cross(A x B)``.
    """
    A = {as_rational(a) for a in A}
    B = {as_rational(b) for b in B}
    if p.x not in A and p.y not in B:
        raise PreconditionError(f"{p!r} is not on the cross of the given levels")
    U = _isolating_interval(p.x, A)
    V = _isolating_interval(p.y, B)
    c = Point(_level_outside(U, p.x, A), _level_outside(V, p.y, B))
    lhs = cross_window(A, B, U, V)
    rhs = cross_window([c.x], [c.y], U, V)
    return Coincidence(U, V, c, verified=same_set(lhs, rhs))


# ---------------------------------------------------------------------------
# Compactness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaCompactCert:
    compact_witness: list
    cross_cover: tuple

    @property
    def cross(self) -> CrossSet:
        return cross_of_finite(self.cross_cover)

    def to_json(self) -> dict:
        return {
            "compact_witness": self.compact_witness,
            "cross_cover": [c.to_json() for c in self.cross_cover],
        }


@dataclass(frozen=True)
class Refusal:
    condition: int
    reason: str
    witness: Point | None = None

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _escape(iv: Interval, avoid: set) -> Fraction:
    k = 2
    while True:
        v = iv.lo + (iv.hi - iv.lo) / k
        if v not in avoid:
            return v
        k += 1


def first_off_cross(k: SetDesc, cross: CrossSet) -> Point | None:
    """A point of ``k`` outside ``cross``, or None when ``k`` lies inside it."""
    dels = k.deletions

    def off(p):
        return p not in dels and p not in cross

    dx = {d.x for d in dels} | set(cross.cols)
    for part in k.parts:
        if isinstance(part, Box):
            x = _escape(part.x, dx)
            y = _escape(part.y, set(cross.rows))
            return Point(x, y)
        if isinstance(part, Segment):
            line = cross.rows if part.axis == HORIZONTAL else cross.cols
            if part.level in line:
                continue
            stop = {d.x if part.axis == HORIZONTAL else d.y for d in dels}
            other = cross.cols if part.axis == HORIZONTAL else cross.rows
            v = _escape(part.span, stop | set(other))
            return Point(v, part.level) if part.axis == HORIZONTAL else Point(part.level, v)
        if isinstance(part, SinglePoint):
            if off(part.at):
                return part.at
            continue
        seq = part.seq
        for p in seq.prefix:
            if off(p):
                return p
        fx, fy = seq.tail_x, seq.tail_y
        if (fy.is_constant and fy.c in cross.rows) or (fx.is_constant and fx.c in cross.cols):
            continue
        # an injective coordinate visits each line at most once
        n = seq.tail_start
        limit = n + 2 * (len(cross.rows) + len(cross.cols) + len(dels)) + 2
        while n <= limit:
            if off(seq[n]):
                return seq[n]
            n += 1
    return None


def _cover_requirements(k: SetDesc):
    """Mandatory (cols, rows) plus the leftover isolated points, or a Refusal."""
    cols, rows, loose = set(), set(), []
    for part in k.parts:
        if isinstance(part, Box):
            return Refusal(2, f"{part} has nonempty interior; no finite cross covers it",
                           first_off_cross(SetDesc([part], k.deletions), CrossSet()))
        if isinstance(part, Segment):
            (rows if part.axis == HORIZONTAL else cols).add(part.level)
        elif isinstance(part, SinglePoint):
            loose.append(part.at)
        else:
            seq = part.seq
            loose.extend(seq.prefix)
            fx, fy = seq.tail_x, seq.tail_y
            if fx.is_constant and fy.is_constant:
                loose.append(seq.limit)
            elif fx.is_constant:
                cols.add(fx.c)
            elif fy.is_constant:
                rows.add(fy.c)
            else:
                return Refusal(2, "sequence tail with both coordinates injective meets "
                                  "infinitely many rows and columns", seq[seq.tail_start])
    loose = sorted({p for p in loose if p not in k.deletions and p.x not in cols and p.y not in rows})
    return cols, rows, loose


def _line_cover(points: list[Point], cols: set = frozenset(), rows: set = frozenset()) -> tuple[set, set]:
    """Extra lines covering ``points`` that minimize the size of the paired cover.

    The paired cover has ``max(#cols, #rows)`` points, so that is minimized
    first, then the number of lines; remaining ties go to columns and
    smaller levels.
    """
    cands = [("col", x) for x in sorted({p.x for p in points})]
    cands += [("row", y) for y in sorted({p.y for p in points})]

    def split(chosen):
        return {v for t, v in chosen if t == "col"}, {v for t, v in chosen if t == "row"}

    def covers(chosen):
        cs, rs = split(chosen)
        return all(p.x in cs or p.y in rs for p in points)

    def cost(chosen):
        cs, rs = split(chosen)
        return max(len(cols | cs), len(rows | rs)), len(chosen)

    if len(cands) <= 16:
        best = None
        for size in range(len(cands) + 1):
            for chosen in itertools.combinations(cands, size):
                if covers(chosen) and (best is None or cost(chosen) < cost(best)):
                    best = chosen
        chosen = best
    else:
        chosen, rest = [], list(points)
        while rest:
            best = max(cands, key=lambda c: sum((p.x if c[0] == "col" else p.y) == c[1] for p in rest))
            chosen.append(best)
            rest = [p for p in rest if (p.x if best[0] == "col" else p.y) != best[1]]
        chosen = [c for c in chosen if not covers([d for d in chosen if d != c])]
    return split(chosen)


def _pair_lines(cols: set, rows: set) -> tuple:
    xs, ys = sorted(cols), sorted(rows)
    if not xs and not ys:
        return ()
    xs = xs or [Fraction(0)]
    ys = ys or [Fraction(0)]
    size = max(len(xs), len(ys))
    return tuple(Point(xs[min(i, len(xs) - 1)], ys[min(i, len(ys) - 1)]) for i in range(size))


def is_gamma_compact(k: SetDesc) -> GammaCompactCert | Refusal:
    """Compact and inside a finite cross, with a minimal cross cover as certificate."""
    closure_gap = LocalAnalysis(k, "tau", complement=True).first_failure()
    if closure_gap is not None:
        return Refusal(1, "not closed: a limit point of the set is missing", closure_gap.point)
    req = _cover_requirements(k)
    if isinstance(req, Refusal):
        return req
    cols, rows, loose = req
    extra_cols, extra_rows = _line_cover(loose, cols, rows)
    cover = _pair_lines(cols | extra_cols, rows | extra_rows)
    features = [
        {"part": str(part), "closed_in_square": True} for part in k.parts
    ] + [{"deletion": d.to_json()} for d in sorted(k.deletions)]
    return GammaCompactCert(features, cover)


@dataclass(frozen=True)
class CoverReplay:
    inclusion: bool
    minimal: bool
    log: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.inclusion and self.minimal


def replay_cover(k: SetDesc, cover: Sequence[Point]) -> CoverReplay:
    """Re-prove ``k <= cross(cover)`` and that every cover point is needed."""
    log = []
    miss = first_off_cross(k, cross_of_finite(cover))
    log.append({"check": "inclusion", "witness": None if miss is None else miss.to_json()})
    minimal = True
    for i, c in enumerate(cover):
        reduced = list(cover[:i]) + list(cover[i + 1:])
        w = first_off_cross(k, cross_of_finite(reduced))
        log.append({"check": "drop", "point": c.to_json(),
                    "witness": None if w is None else w.to_json()})
        minimal &= w is not None
    return CoverReplay(miss is None, minimal, log)


# ---------------------------------------------------------------------------
# Limits of sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaLimitResult:
    verdict: str
    limit: Point | None = None
    tail_index: int | None = None
    witness: dict | None = None

    @property
    def converges(self) -> bool:
        return self.verdict == "converges"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "limit": None if self.limit is None else self.limit.to_json(),
            "tail_index": self.tail_index,
            "witness": self.witness,
        }


def gamma_limit(seq: SeqSpec) -> GammaLimitResult:
    """Gamma-limit of a sequence from its closed-form tail.

    Eventual membership in the cross of the limit forces a constant tail
    coordinate, so the only candidate limit is the tau-limit of the tail.
    """
    fx, fy = seq.tail_x, seq.tail_y
    if not fx.is_constant and not fy.is_constant:
        return GammaLimitResult(
            "diverges",
            witness={
                "kind": "injective_tail",
                "from_index": seq.tail_start,
                "reason": "both tail coordinates are injective, so no tail term "
                          "lies on the cross of the only candidate limit",
            },
        )
    z0 = seq.limit
    cross = cross_of_point(z0)
    m = seq.tail_start
    while m > 1 and seq[m - 1] in cross:
        m -= 1
    return GammaLimitResult("converges", z0, m)


def recheck_gamma_limit(seq: SeqSpec, result: GammaLimitResult, window: int = 64) -> bool:
    """Re-derive a gamma_limit verdict from the definition, independently of it.

    Converges: every tail term lies on the cross of the limit (checked on a
    window and symbolically through the constant coordinate) and both
    coordinates tend to the limit.  Diverges: for every candidate point, the
    tail leaves its cross infinitely often or fails to approach it.
    """
    n0 = seq.tail_start
    fx, fy = seq.tail_x, seq.tail_y
    if result.converges:
        z0 = result.limit
        if (fx.limit, fy.limit) != (z0.x, z0.y):
            return False
        if not ((fx.is_constant and fx.c == z0.x) or (fy.is_constant and fy.c == z0.y)):
            return False
        m = result.tail_index
        cross = cross_of_point(z0)
        terms_ok = all(seq[n] in cross for n in range(m, n0 + window))
        minimal = m == 1 or seq[m - 1] not in cross
        return terms_ok and minimal
    # any gamma-limit is a tau-limit, hence the tail limit; the tail never
    # shares a coordinate with it when both formulas are injective
    if fx.is_constant or fy.is_constant:
        return False
    lim = seq.limit
    return all(seq[n].x != lim.x and seq[n].y != lim.y for n in range(n0, n0 + window))
