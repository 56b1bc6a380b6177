"""Brute-force oracles, kept independent of the decision procedures they check.

Nothing here uses the cell arrangement: closedness is probed at sampled
boundary features and tiny offsets, and finite covers are found by the
classic bounded search tree for covering points with lines.
"""

from __future__ import annotations

from fractions import Fraction

from .exactset import Box, HORIZONTAL, Point, SeqTrace, Segment, SetDesc, SinglePoint

PROBE_OFFSETS = (Fraction(1, 10 ** 6), Fraction(1, 10 ** 9))
SIDE_SAMPLES = 16


def _clip(v: Fraction) -> Fraction:
    return min(max(v, Fraction(0)), Fraction(1))


def _closure_probes(s: SetDesc) -> list[Point]:
    """Points certainly in the closure of ``s``."""
    out = []
    for part in s.parts:
        if isinstance(part, Box):
            xs = [part.x.lo + (part.x.hi - part.x.lo) * Fraction(k, SIDE_SAMPLES) for k in range(SIDE_SAMPLES + 1)]
            ys = [part.y.lo + (part.y.hi - part.y.lo) * Fraction(k, SIDE_SAMPLES) for k in range(SIDE_SAMPLES + 1)]
            out += [Point(x, part.y.lo) for x in xs] + [Point(x, part.y.hi) for x in xs]
            out += [Point(part.x.lo, y) for y in ys] + [Point(part.x.hi, y) for y in ys]
        elif isinstance(part, Segment):
            for v in (part.span.lo, part.span.hi):
                out.append(Point(v, part.level) if part.axis == HORIZONTAL else Point(part.level, v))
        elif isinstance(part, SeqTrace):
            out.append(part.seq.limit)
    return [p for p in out if p not in s.deletions] + _deleted_limits(s)


def _deleted_limits(s: SetDesc) -> list[Point]:
    """Deleted points that the rest of the set approaches."""
    hits = []
    for d in s.deletions:
        near = False
        for eps in PROBE_OFFSETS:
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    if dx == dy == 0:
                        continue
                    q = Point(_clip(d.x + dx * eps), _clip(d.y + dy * eps))
                    if q != d and s.contains(q):
                        near = True
        for part in s.parts:
            if isinstance(part, SeqTrace):
                tail = [part.seq[n] for n in range(part.seq.tail_start, part.seq.tail_start + 3)]
                if part.seq.limit == d and len(set(tail)) > 1:
                    near = True
        if near:
            hits.append(d)
    return hits


def closed_by_sampling(s: SetDesc) -> bool:
    return all(s.contains(p) for p in _closure_probes(s))


def member_samples(s: SetDesc, grid: int = 10, tail: int = 40) -> list[Point]:
    """Sampled members; boxes contribute a grid of distinct interior abscissae and ordinates."""
    pts = []
    for part in s.parts:
        if isinstance(part, Box):
            for i in range(1, grid + 1):
                for j in range(1, grid + 1):
                    pts.append(Point(part.x.lo + (part.x.hi - part.x.lo) * Fraction(i, grid + 1),
                                     part.y.lo + (part.y.hi - part.y.lo) * Fraction(j, grid + 1)))
        elif isinstance(part, Segment):
            for k in range(1, grid + 1):
                v = part.span.lo + (part.span.hi - part.span.lo) * Fraction(k, grid + 1)
                pts.append(Point(v, part.level) if part.axis == HORIZONTAL else Point(part.level, v))
        elif isinstance(part, SinglePoint):
            pts.append(part.at)
        else:
            pts += part.seq.take(len(part.seq.prefix) + tail)
    return sorted({p for p in pts if s.contains(p)})


def line_cover_search(points: list[Point], budget: int = 8) -> tuple[set, set] | None:
    """Columns and rows covering ``points`` with at most ``budget`` lines."""

    def search(rest, cols, rows, left):
        rest = [p for p in rest if p.x not in cols and p.y not in rows]
        if not rest:
            return cols, rows
        if left == 0:
            return None
        p = rest[0]
        return (search(rest, cols | {p.x}, rows, left - 1)
                or search(rest, cols, rows | {p.y}, left - 1))

    return search(points, frozenset(), frozenset(), budget)


def gamma_compact_oracle(s: SetDesc) -> bool:
    return closed_by_sampling(s) and line_cover_search(member_samples(s)) is not None
