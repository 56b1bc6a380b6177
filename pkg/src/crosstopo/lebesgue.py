"""Harnesses for the two theorems about Baire-one approximation.

Refutation side: every sequence of piecewise row/column collapse maps fails
to converge to the identity in the cross-topology at some probe point.

Construction side: over a depth-bounded Cantor space, freezing the first
variable of a separately continuous map at a representative of each small
clopen cylinder gives maps that converge pointwise to the original.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactset import (
    Interval,
    Point,
    SeqSpec,
    ValidationError,
    as_rational,
    closed,
    constant,
    cross_of_point,
)
from .gammatop import GammaLimitResult, gamma_limit

ROW_TAG, COLUMN_TAG = "row", "column"


class InsufficientEvidence(RuntimeError):
    pass


class DepthError(ValueError):
    pass


class UncoveredError(ValueError):
    def __init__(self, witness: str):
        super().__init__(f"cover misses the point {witness}")
        self.witness = witness


# ---------------------------------------------------------------------------
# Candidate sequences of collapse maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    x: Interval
    y: Interval
    tag: str
    level: Fraction

    def __post_init__(self):
        if self.tag not in (ROW_TAG, COLUMN_TAG):
            raise ValidationError(f"piece tag must be row|column, got {self.tag!r}")
        object.__setattr__(self, "level", as_rational(self.level))
        if not 0 <= self.level <= 1:
            raise ValidationError(f"piece level {self.level} outside [0,1]")

    def covers(self, p: Point) -> bool:
        return self.x.lo <= p.x <= self.x.hi and self.y.lo <= p.y <= self.y.hi

    def apply(self, p: Point) -> Point:
        if self.tag == ROW_TAG:
            return Point(p.x, self.level)
        return Point(self.level, p.y)

    def to_json(self) -> dict:
        return {"x": [str(self.x.lo), str(self.x.hi)], "y": [str(self.y.lo), str(self.y.hi)],
                "tag": self.tag, "level": str(self.level)}


@dataclass(frozen=True)
class PiecewiseMap:
    """Closed rectangles tiling the square; a point on a shared edge uses the first piece."""

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise ValidationError("a piecewise map needs at least one piece")
        xs = sorted({v for pc in self.pieces for v in (pc.x.lo, pc.x.hi)} | {Fraction(0), Fraction(1)})
        ys = sorted({v for pc in self.pieces for v in (pc.y.lo, pc.y.hi)} | {Fraction(0), Fraction(1)})
        for x0, x1 in zip(xs, xs[1:]):
            for y0, y1 in zip(ys, ys[1:]):
                mid = Point((x0 + x1) / 2, (y0 + y1) / 2)
                owners = sum(pc.covers(mid) for pc in self.pieces)
                if owners != 1:
                    raise ValidationError(
                        f"pieces cover the cell around {mid!r} {owners} times; they must tile the square")

    def __call__(self, p: Point) -> Point:
        for pc in self.pieces:
            if pc.covers(p):
                return pc.apply(p)
        raise AssertionError("tiling invariant broken")

    @property
    def levels(self) -> set:
        return {(pc.tag, pc.level) for pc in self.pieces}

    def to_json(self) -> dict:
        return {"pieces": [pc.to_json() for pc in self.pieces]}


def collapse(tag: str, level) -> PiecewiseMap:
    return PiecewiseMap([Piece(closed(0, 1), closed(0, 1), tag, as_rational(level))])


@dataclass(frozen=True)
class CandidateSeq:
    """``f_1, ..., f_L``; beyond ``L`` the last ``period`` maps repeat forever."""

    maps: tuple
    period: int = 1

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))

    def index_of_cycle(self) -> list[int]:
        """1-based indices of the repeating block."""
        L = len(self.maps)
        return list(range(L - self.period + 1, L + 1))

    def __getitem__(self, n: int) -> PiecewiseMap:
        L = len(self.maps)
        if n <= L:
            return self.maps[n - 1]
        start = L - self.period + 1
        return self.maps[start - 1 + (n - start) % self.period]

    def to_json(self) -> dict:
        return {"maps": [m.to_json() for m in self.maps], "period": self.period}


@dataclass(frozen=True)
class RefutationWitness:
    point: Point
    first_index: int
    period: int
    image: Point
    reason: str
    replay: GammaLimitResult
    probes_tried: int = 1

    @property
    def subsequence(self) -> SeqSpec:
        """The constant subsequence ``f_{n0 + k*period}(p)``, k >= 0."""
        return SeqSpec((), constant(self.image.x), constant(self.image.y))

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "first_index": self.first_index,
            "period": self.period,
            "image": self.image.to_json(),
            "reason": self.reason,
            "replay": self.replay.to_json(),
            "probes_tried": self.probes_tried,
        }


def refining_probes(max_level: int = 6) -> Iterable[Point]:
    """Cell centers of the 1, 2, 4, ..., 2**max_level grids, coarsest first."""
    seen = set()
    for k in range(max_level + 1):
        m = 2 ** k
        for j in range(m):
            for i in range(m):
                p = Point(Fraction(2 * i + 1, 2 * m), Fraction(2 * j + 1, 2 * m))
                if p not in seen:
                    seen.add(p)
                    yield p


def witness_at(c: CandidateSeq, p: Point) -> RefutationWitness | None:
    """Evidence that ``f_n(p)`` does not gamma-converge to ``p``.

    Along each residue class of the repeating block the images are constant,
    so a block image other than ``p`` is the limit of a subsequence; gamma
    is Hausdorff, hence the full sequence cannot converge to ``p``.
    """
    for n in c.index_of_cycle():
        q = c[n](p)
        if q == p:
            continue
        reason = "off_cross" if q not in cross_of_point(p) else "no_convergence"
        replay = gamma_limit(SeqSpec((), constant(q.x), constant(q.y)))
        return RefutationWitness(p, n, c.period, q, reason, replay)
    return None


def refute_pointwise_identity(c: CandidateSeq, probes: Sequence[Point] | None = None,
                              max_level: int = 6) -> RefutationWitness:
    if c.period < 1 or len(c.maps) < c.period:
        raise InsufficientEvidence(
            f"{len(c.maps)} maps cannot carry a repeating block of length {c.period}")
    candidates = refining_probes(max_level) if probes is None else probes
    tried = 0
    for p in candidates:
        tried += 1
        w = witness_at(c, p)
        if w is not None:
            return RefutationWitness(w.point, w.first_index, w.period, w.image, w.reason,
                                     w.replay, tried)
    raise InsufficientEvidence(f"no probe among {tried} refutes convergence")


def replay_refutation(w: RefutationWitness) -> bool:
    """Independent check: the witness subsequence has a gamma-limit other than the probe."""
    result = gamma_limit(w.subsequence)
    return not result.converges or result.limit != w.point


# ---------------------------------------------------------------------------
# Depth-bounded Cantor space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UltraModel:
    """Bit strings of length ``depth`` with ``d(x, y) = 2**-i``, ``i`` the
    0-based index of the first differing bit; a depth-``n`` cylinder has
    diameter exactly ``2**-n``."""

    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be positive")

    def check(self, x: str) -> str:
        if len(x) != self.depth or set(x) - {"0", "1"}:
            raise ValidationError(f"{x!r} is not a bit string of length {self.depth}")
        return x

    def points(self) -> Iterable[str]:
        for k in range(2 ** self.depth):
            yield format(k, f"0{self.depth}b")

    def distance(self, x: str, y: str) -> Fraction:
        for i, (a, b) in enumerate(zip(x, y)):
            if a != b:
                return Fraction(1, 2 ** i)
        return Fraction(0)

    def cylinders(self, n: int) -> list[str]:
        if not 0 <= n <= self.depth:
            raise DepthError(f"cylinder depth {n} outside 0..{self.depth}")
        return [format(k, f"0{n}b") if n else "" for k in range(2 ** n)]

    def representative(self, prefix: str) -> str:
        """Lexicographically smallest point of the cylinder."""
        return prefix + "0" * (self.depth - len(prefix))

    def value(self, x: str) -> Fraction:
        """Binary fraction ``0.x``; 1-Lipschitz for the ultrametric."""
        return Fraction(int(x, 2), 2 ** self.depth)

    def random_point(self, rng: random.Random) -> str:
        return "".join(rng.choice("01") for _ in range(self.depth))


def _flip(bit: str) -> str:
    return "1" if bit == "0" else "0"


def subtract_cylinder(cyls: list[str], b: str) -> list[str]:
    """``union(cyls) minus cylinder(b)`` as disjoint cylinders."""
    out = []
    for a in cyls:
        if a.startswith(b):
            continue
        if b.startswith(a):
            out.extend(b[:j] + _flip(b[j]) for j in range(len(a), len(b)))
        else:
            out.append(a)
    return out


def in_union(x: str, cyls: Iterable[str]) -> bool:
    return any(x.startswith(c) for c in cyls)


def disjointify_cover(cover: Sequence[str], model: UltraModel) -> list[list[str]]:
    """Ordered differences: the k-th output is cover[k] minus all earlier members.

    Each output is a sorted list of disjoint cylinder prefixes (possibly empty).
    """
    for c in cover:
        if len(c) > model.depth or set(c) - {"0", "1"}:
            raise ValidationError(f"{c!r} is not a cylinder prefix of depth <= {model.depth}")
    out, seen = [], []
    for c in cover:
        piece = [c]
        for earlier in seen:
            piece = subtract_cylinder(piece, earlier)
        out.append(sorted(piece))
        seen.append(c)
    covered = [c for part in out for c in part]
    missing = [""]
    for c in covered:
        missing = subtract_cylinder(missing, c)
    if missing:
        raise UncoveredError(model.representative(min(missing)))
    return out


def is_partition(parts: Sequence[Sequence[str]], model: UltraModel) -> bool:
    """Exhaustive check over every point: each lies in exactly one part."""
    for x in model.points():
        if sum(in_union(x, p) for p in parts) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Oracles and approximants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SepOracle:
    name: str
    fn: Callable[[str, Fraction], Fraction] = field(compare=False)
    lipschitz: Fraction | None = None

    def __call__(self, x: str, y: Fraction) -> Fraction:
        return self.fn(x, y)


def _constant_in_x(x, y):
    return y * y


def _first_bit(x, y):
    return y if x[0] == "1" else Fraction(0)


def _lipschitz(x, y):
    return Fraction(int(x, 2), 2 ** len(x)) * (1 + y) / 2


BUILTIN_ORACLES = {
    "constant": SepOracle("constant", _constant_in_x, Fraction(0)),
    "depth1": SepOracle("depth1", _first_bit, Fraction(1)),
    "lipschitz": SepOracle("lipschitz", _lipschitz, Fraction(1)),
}


def get_oracle(name: str) -> SepOracle:
    key = name.removeprefix("builtin:")
    try:
        return BUILTIN_ORACLES[key]
    except KeyError:
        raise ValueError(f"unknown oracle {name!r}; known: {sorted(BUILTIN_ORACLES)}") from None


def check_lipschitz(f: SepOracle, model: UltraModel, ys: Sequence[Fraction],
                    pairs: int = 256, seed: int = 0) -> tuple[str, str, Fraction] | None:
    """A sampled pair violating the declared constant, or None."""
    if f.lipschitz is None:
        return None
    rng = random.Random(seed)
    for _ in range(pairs):
        x1, x2 = model.random_point(rng), model.random_point(rng)
        d = model.distance(x1, x2)
        for y in ys:
            if abs(f(x1, y) - f(x2, y)) > f.lipschitz * d:
                return x1, x2, y
    return None


@dataclass(frozen=True)
class Approximant:
    """``(x, y) -> f(rep(x), y)`` with ``rep`` constant on each part."""

    oracle: SepOracle
    model: UltraModel
    level: int
    parts: tuple
    table: tuple

    def __post_init__(self):
        # parts are disjoint, so every cylinder maps to at most one representative
        index = {c: rep for part, rep in zip(self.parts, self.table) for c in part}
        object.__setattr__(self, "_index", index)

    def representative(self, x: str) -> str:
        for k in range(len(x) + 1):
            rep = self._index.get(x[:k])
            if rep is not None:
                return rep
        raise AssertionError("parts do not cover the space")

    def __call__(self, x: str, y: Fraction) -> Fraction:
        return self.oracle(self.representative(x), y)

    def table_json(self) -> list:
        return [{"part": list(p), "representative": r} for p, r in zip(self.parts, self.table)]


def baire1_approximate(f: SepOracle, n: int, model: UltraModel,
                       cover: Sequence[str] | None = None) -> Approximant:
    """Level-``n`` approximant over depth-``n`` cylinders, or over the
    disjointified ``cover`` whose members must have depth at least ``n``."""
    if not 1 <= n <= model.depth:
        raise DepthError(f"level {n} outside 1..{model.depth}")
    if cover is None:
        parts = tuple((c,) for c in model.cylinders(n))
    else:
        shallow = [c for c in cover if len(c) < n]
        if shallow:
            raise DepthError(f"cover members {shallow} are wider than 2**-{n}")
        parts = tuple(tuple(p) for p in disjointify_cover(cover, model) if p)
    reps = tuple(model.representative(min(p)) for p in parts)
    return Approximant(f, model, n, parts, reps)


@dataclass
class ConvergenceReport:
    oracle: str
    levels: list
    errors: list = field(default_factory=list)
    bound_ok: bool = True
    envelope_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.bound_ok and self.envelope_ok

    def max_error(self, n: int) -> Fraction:
        k = self.levels.index(n)
        return max((e[k] for _, _, e in self.errors), default=Fraction(0))

    def to_json(self) -> dict:
        return {
            "oracle": self.oracle,
            "levels": self.levels,
            "max_error": [str(self.max_error(n)) for n in self.levels],
            "bound_ok": self.bound_ok,
            "envelope_ok": self.envelope_ok,
            "samples": len(self.errors),
        }


def verify_pointwise_convergence(f: SepOracle, model: UltraModel, levels: Iterable[int],
                                 samples: Sequence[tuple[str, Fraction]]) -> ConvergenceReport:
    """Error sequences ``|f_n(x,y) - f(x,y)|`` per sample.

    The envelope ``max_{m >= n} e_m`` must vanish at the full depth; for a
    declared Lipschitz constant ``L`` every ``e_n <= L * 2**-n``.
    """
    levels = sorted(set(levels))
    approx = {n: baire1_approximate(f, n, model) for n in levels}
    report = ConvergenceReport(f.name, levels)
    for x, y in samples:
        model.check(x)
        exact = f(x, y)
        errs = [abs(approx[n](x, y) - exact) for n in levels]
        report.errors.append((x, y, errs))
        if f.lipschitz is not None:
            if any(e > f.lipschitz * Fraction(1, 2 ** n) for e, n in zip(errs, levels)):
                report.bound_ok = False
        if model.depth in levels and errs[levels.index(model.depth)] != 0:
            report.envelope_ok = False
    return report
