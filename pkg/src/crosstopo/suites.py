"""Bundled acceptance suites, each a deterministic function of its seed.

Reports contain only exact values and are serialized canonically, so the
same seed always yields byte-identical JSON.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import _pykernels, crossmap, kernels, lebesgue, raster
from .exactset import (
    Box,
    Point,
    SeqSpec,
    SeqTrace,
    SetDesc,
    SinglePoint,
    TailFormula,
    closed,
    constant,
    cross_of_point,
    hseg,
    open_,
    unit_square,
    vseg,
)
from .gammatop import (
    COMPLEMENT,
    GammaCompactCert,
    gamma_limit,
    is_gamma_compact,
    is_gamma_open,
    local_coincidence_neighborhood,
    recheck_gamma_limit,
    replay_cover,
    verify_gamma_discrete,
)
from .oracles import gamma_compact_oracle

F = Fraction


class Report:
    def __init__(self, name: str, seed: int):
        self.name = name
        self.seed = seed
        self.checks: list[dict] = []
        self.stats: dict = {}

    def check(self, label: str, passed: bool, **detail):
        entry = {"name": label, "passed": bool(passed)}
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)
        return passed

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "total_checks": len(self.checks),
            "failed": [c for c in self.checks if not c["passed"]],
            "checks": self.checks,
            "stats": self.stats,
        }


def _rand_rational(rng: random.Random, lo: Fraction, hi: Fraction, den: int = 97) -> Fraction:
    k = rng.randint(0, den)
    return lo + (hi - lo) * F(k, den)


def _injective_formula(rng: random.Random, n0: int) -> TailFormula:
    """Injective tail whose values stay inside [1/8, 7/8]."""
    c = _rand_rational(rng, F(1, 4), F(3, 4), 48)
    b = F(rng.randint(0, 5))
    amp = _rand_rational(rng, F(1, 64), F(1, 8), 16) * (n0 + b)
    return TailFormula(c, amp if rng.random() < 0.5 else -amp, b)


# ---------------------------------------------------------------------------


def suite_prop1(seed: int = 0, count: int = 200) -> Report:
    """Injective-coordinate sequences are gamma-discrete; complements are gamma-open."""
    rng = random.Random(seed)
    rep = Report("prop1", seed)
    for k in range(count):
        m = rng.randint(0, 3)
        band = sorted(rng.sample(range(0, 64), 2 * m))
        coords = [F(v, 1024) if v < 32 else 1 - F(v - 32, 1024) for v in band]
        rng.shuffle(coords)
        prefix = [Point(coords[2 * i], coords[2 * i + 1]) for i in range(m)]
        seq = SeqSpec(prefix, _injective_formula(rng, m + 1), _injective_formula(rng, m + 1))
        cert = verify_gamma_discrete(seq)
        trace = SetDesc([SeqTrace(seq)])
        comp_open = is_gamma_open(trace, COMPLEMENT)
        finite = SetDesc([SinglePoint(p) for p in seq.take(m + 3)])
        finite_open = is_gamma_open(finite, COMPLEMENT)
        rep.check(f"seq{k}", cert.certified and comp_open and finite_open,
                  certified=cert.certified, complement_open=comp_open, finite_complement_open=finite_open)
    rep.stats["sequences"] = count
    return rep


def suite_prop41(seed: int = 0, count: int = 100) -> Report:
    """gamma_limit verdicts agree with the definition."""
    rng = random.Random(seed)
    rep = Report("prop41", seed)
    verdicts = {"converges": 0, "diverges": 0}
    for k in range(count):
        m = rng.randint(0, 3)
        prefix = [Point(_rand_rational(rng, F(0), F(1), 12), _rand_rational(rng, F(0), F(1), 12)) for _ in range(m)]
        shape = rng.choice(["const", "xconst", "yconst", "injective"])
        fx = _injective_formula(rng, m + 1)
        fy = _injective_formula(rng, m + 1)
        if shape in ("const", "xconst"):
            fx = constant(_rand_rational(rng, F(0), F(1), 8))
        if shape in ("const", "yconst"):
            fy = constant(_rand_rational(rng, F(0), F(1), 8))
        if prefix and rng.random() < 0.5:
            # a prefix term already on the limit's cross moves the tail index down
            prefix[-1] = Point(fx.limit, prefix[-1].y)
        seq = SeqSpec(prefix, fx, fy)
        result = gamma_limit(seq)
        verdicts[result.verdict] += 1
        rep.check(f"seq{k}", recheck_gamma_limit(seq, result), shape=shape, verdict=result.verdict,
                  tail_index=result.tail_index)
    rep.stats["verdicts"] = verdicts
    return rep


def suite_prop3(seed: int = 0, count: int = 50) -> Report:
    """Local windows where the finite cross coincides with a single cross."""
    rng = random.Random(seed)
    rep = Report("prop3", seed)
    for k in range(count):
        A = sorted({F(rng.randint(0, 12), 12) for _ in range(rng.randint(1, 4))})
        B = sorted({F(rng.randint(0, 12), 12) for _ in range(rng.randint(1, 4))})
        if rng.random() < 0.5:
            p = Point(rng.choice(A), F(rng.randint(0, 24), 24))
        else:
            p = Point(F(rng.randint(0, 24), 24), rng.choice(B))
        res = local_coincidence_neighborhood(A, B, p)
        ok_sizes = sum(a in res.U for a in A) <= 1 and sum(b in res.V for b in B) <= 1
        ok_p = p.x in res.U and p.y in res.V
        # sampled cross-section equality, independent of the symbolic path
        cross_c = cross_of_point(res.c)
        sampled = True
        for _ in range(40):
            x = res.U.lo + (res.U.hi - res.U.lo) * F(rng.randint(0, 60), 60)
            y = res.V.lo + (res.V.hi - res.V.lo) * F(rng.randint(0, 60), 60)
            if x not in res.U or y not in res.V:
                continue
            q = Point(x, y)
            in_c = q.x in A or q.y in B
            sampled &= in_c == (q in cross_c)
        for a in A:
            if a in res.U:
                sampled &= Point(a, p.y if p.x == a else res.V.midpoint) in cross_c
        rep.check(f"case{k}", res.verified and ok_sizes and ok_p and sampled,
                  A=[str(a) for a in A], B=[str(b) for b in B], p=p.to_json(), result=res.to_json())
    return rep


def prop4_catalog() -> list[tuple[str, SetDesc]]:
    sq = unit_square()
    h = F(1, 2)
    inj = SeqSpec((), TailFormula(0, 1, 1), TailFormula(0, 1, 2))
    col_tail = SeqSpec((), constant(0), TailFormula(0, 1, 1))
    row_tail = SeqSpec((), TailFormula(0, 1, 1), constant(h))
    frame = [hseg(F(1, 4), closed(F(1, 4), F(3, 4))), vseg(F(1, 4), closed(F(1, 4), F(3, 4))),
             vseg(F(3, 4), closed(F(1, 4), F(3, 4)))]
    pts = lambda *ps: [SinglePoint(Point(F(a), F(b))) for a, b in ps]
    return [
        ("one_point_cross", SetDesc([vseg(0, closed(0, 1)), hseg(0, closed(0, 1))])),
        ("closed_square", sq),
        ("open_vertical_segment", SetDesc([vseg(0, open_(0, 1))])),
        ("single_point", SetDesc(pts(("1/3", "2/5")))),
        ("empty", SetDesc()),
        ("two_points", SetDesc(pts(("1/3", "1/4"), ("2/3", "3/4")))),
        ("closed_segment", SetDesc([hseg(h, closed(F(1, 4), F(3, 4)))])),
        ("half_open_segment", SetDesc([hseg(h, closed(F(1, 4), F(3, 4)).__class__(F(1, 4), F(3, 4), True, False))])),
        ("segment_minus_interior", SetDesc([hseg(h, closed(0, 1))], {Point(h, h)})),
        ("segment_minus_endpoint", SetDesc([hseg(h, closed(0, 1))], {Point(1, h)})),
        ("column_tail_with_limit", SetDesc([SeqTrace(col_tail), SinglePoint(Point(0, 0))])),
        ("column_tail_without_limit", SetDesc([SeqTrace(col_tail)])),
        ("row_tail_with_limit", SetDesc([SeqTrace(row_tail), SinglePoint(Point(0, h))])),
        ("injective_tail_with_limit", SetDesc([SeqTrace(inj), SinglePoint(Point(0, 0))])),
        ("injective_tail_without_limit", SetDesc([SeqTrace(inj)])),
        ("open_box", SetDesc([Box(open_(0, 1), open_(0, 1))])),
        ("small_closed_box", SetDesc([Box(closed(F(1, 4), h), closed(F(1, 4), h))])),
        ("segment_grid", SetDesc([vseg(F(k, 4), closed(0, 1)) for k in (1, 2, 3)]
                                 + [hseg(F(k, 3), closed(0, 1)) for k in (1, 2)])),
        ("glued_half_open", SetDesc([hseg(F(1, 3), closed(0, h).__class__(0, h, True, False)),
                                     hseg(F(1, 3), closed(h, 1))])),
        ("closed_frame", SetDesc(frame + [hseg(F(3, 4), closed(F(1, 4), F(3, 4)))])),
        ("frame_open_top", SetDesc(frame + [hseg(F(3, 4), open_(F(1, 4), F(3, 4)))])),
        ("segment_with_point_on_it", SetDesc([vseg(h, closed(0, 1))] + pts(("1/2", "1/3")))),
        ("constant_trace", SetDesc([SeqTrace(SeqSpec((), constant(h), constant(h)))])),
        ("prefix_and_row_tail", SetDesc([SeqTrace(SeqSpec((Point(F(1, 5), F(4, 5)), Point(F(4, 5), F(1, 5))),
                                                          TailFormula(0, 1, 0), constant(h))),
                                         SinglePoint(Point(0, h))])),
        ("scattered_points", SetDesc(pts(("1/7", "2/7"), ("1/7", "3/7"), ("5/7", "3/7"), ("6/7", "6/7"), ("2/7", "6/7")))),
        ("diagonal_points", SetDesc(pts(("1/5", "1/5"), ("2/5", "2/5"), ("3/5", "3/5"), ("4/5", "4/5")))),
        ("box_and_segment", SetDesc([Box(closed(0, h), closed(0, h)), hseg(F(3, 4), closed(0, 1))])),
        ("square_minus_point", SetDesc(sq.parts, {Point(h, h)})),
        ("right_edge", SetDesc([vseg(1, closed(0, 1))])),
        ("top_edge_half_open", SetDesc([hseg(1, closed(0, 1).__class__(0, 1, False, True))])),
        ("row_tail_limit_on_segment", SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 1), constant(0))),
                                               vseg(0, closed(0, 1))])),
        ("row_tail_limit_deleted", SetDesc([SeqTrace(row_tail), SinglePoint(Point(0, h))], {Point(0, h)})),
        ("corner_via_point", SetDesc([hseg(0, closed(0, 1).__class__(0, 1, False, True)),
                                      vseg(0, closed(0, 1).__class__(0, 1, False, True))] + pts(("0", "0")))),
        ("points_with_deletion", SetDesc(pts(("1/3", "1/3"), ("2/3", "1/3"), ("1/2", "5/6")), {Point(F(2, 3), F(1, 3))})),
    ]


def suite_prop4(seed: int = 0) -> Report:
    """is_gamma_compact agrees with the brute-force oracle; certificates replay."""
    rep = Report("prop4", seed)
    positives = 0
    for name, k in prop4_catalog():
        result = is_gamma_compact(k)
        verdict = isinstance(result, GammaCompactCert)
        oracle = gamma_compact_oracle(k)
        detail = {"verdict": verdict, "oracle": oracle}
        ok = verdict == oracle
        if verdict:
            positives += 1
            replay = replay_cover(k, result.cross_cover)
            detail["cover"] = [c.to_json() for c in result.cross_cover]
            detail["replay"] = replay.ok
            ok &= replay.ok
        else:
            detail["refusal"] = result.to_json()
        rep.check(name, ok, **detail)
    rep.stats["catalog"] = len(rep.checks)
    rep.stats["positives"] = positives
    return rep


def suite_cor32(seed: int = 0) -> Report:
    """Square minus finitely many punctures stays a single component."""
    rng = random.Random(seed)
    rep = Report("cor32", seed)
    sq = unit_square()
    for k in (1, 2, 3, 5):
        punctures = [Point(F(rng.randint(128, 896), 1024), F(rng.randint(128, 896), 1024)) for _ in range(k)]
        for n in (16, 32, 64, 128):
            g = raster.puncture(raster.rasterize(sq, n), punctures)
            fast = raster.label_components(g).count
            slow = _pykernels.label4(g.mask)[1]
            rep.check(f"k{k}_n{n}", fast == 1 and slow == 1, components=fast, fallback=slow)
    n = 64
    level = F(2 * (n // 2) + 1, 2 * n)
    seg = SetDesc([hseg(level, closed(0, 1))])
    count = raster.c1_component_count(seg, [Point(F(1, 2), level)], n)
    rep.check("segment_minus_midpoint", count == 2, components=count, level=str(level))
    rep.stats["backend"] = kernels.BACKEND
    return rep


def lemma2_levels(n: int) -> list[Fraction]:
    """Candidate cross levels off the cell centers, so the cross occupies no cell."""
    centers = {F(2 * i + 1, 2 * n) for i in range(n)}
    return sorted(({F(k, n) for k in range(n + 1)} | {F(1, 3), F(2, 3), F(1, 4)}) - centers)


def _subsets(pool, up_to=2):
    return [c for k in range(up_to + 1) for c in itertools.combinations(pool, k)]


def suite_lemma2(seed: int = 0) -> Report:
    """Exhaustive raster cross-mappings always collapse onto one row or column."""
    rep = Report("lemma2", seed)
    counts = {}
    for n in (2, 3):
        pool = lemma2_levels(n)
        total = dichotomy = unverified = 0
        for A in _subsets(pool):
            for B in _subsets(pool):
                for f in crossmap.enumerate_cross_mappings(n, A, B):
                    total += 1
                    res = crossmap.classify_cross_mapping(f, A, B)
                    if res.kind == crossmap.VIOLATION:
                        dichotomy += res.violation == "dichotomy"
                        unverified += 1
                    elif not crossmap.verify_collapse(f, res):
                        unverified += 1
        counts[str(n)] = total
        rep.check(f"n{n}_no_dichotomy_violation", dichotomy == 0, maps=total, violations=dichotomy)
        rep.check(f"n{n}_collapses_verified", unverified == 0, unverified=unverified)
    # diagnostic only: levels through cell centers let the raster proxy break the hypotheses
    diag = {}
    for n in (2, 3):
        pool = sorted({F(2 * i + 1, 2 * n) for i in range(n)} | {F(1, 2), F(1, 3)})
        total = broken = 0
        for A in _subsets(pool):
            for B in _subsets(pool):
                for f in crossmap.enumerate_cross_mappings(n, A, B):
                    total += 1
                    broken += crossmap.classify_cross_mapping(f, A, B).violation == "dichotomy"
        diag[str(n)] = {"maps": total, "dichotomy_reports": broken}
    rep.stats["counts"] = counts
    rep.stats["center_aligned_diagnostic"] = diag
    return rep


SEC5_DEPTH = 12


def random_cover(model: lebesgue.UltraModel, rng: random.Random) -> list[str]:
    """Overlapping cylinders whose union is the whole space."""
    cover = []
    missing = [""]
    while missing:
        if rng.random() < 0.5:
            c = "".join(rng.choice("01") for _ in range(rng.randint(1, 3)))
        else:
            # a missing cylinder, sometimes widened to an ancestor so covers overlap
            target = rng.choice(missing)
            c = target[:rng.randint(1, len(target))] if target else rng.choice("01")
        cover.append(c)
        missing = lebesgue.subtract_cylinder(missing, c)
    extra = ["".join(rng.choice("01") for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(1, 4))]
    cover += extra
    rng.shuffle(cover)
    return cover


def suite_sec5(seed: int = 0) -> Report:
    """Cylinder approximants converge with the predicted error bounds."""
    rng = random.Random(seed)
    rep = Report("sec5", seed)
    model = lebesgue.UltraModel(SEC5_DEPTH)
    ys = [F(k, 63) for k in range(64)]
    xs = ["0" * SEC5_DEPTH, "1" * SEC5_DEPTH] + [model.random_point(rng) for _ in range(62)]
    samples = [(x, y) for x in xs for y in ys]
    levels = list(range(1, SEC5_DEPTH + 1))
    for name in ("constant", "depth1", "lipschitz"):
        f = lebesgue.get_oracle(name)
        r = lebesgue.verify_pointwise_convergence(f, model, levels, samples)
        maxima = [r.max_error(n) for n in levels]
        if name == "lipschitz":
            expected = all(e <= F(1, 2 ** n) for e, n in zip(maxima, levels))
        else:
            expected = all(e == 0 for e in maxima)
        rep.check(f"{name}_errors", expected and r.ok, max_error=[str(e) for e in maxima])
        lip = lebesgue.check_lipschitz(f, model, ys[::8], seed=seed)
        rep.check(f"{name}_lipschitz_declaration", lip is None)
    reps_ok = True
    for n in levels:
        approx = lebesgue.baire1_approximate(lebesgue.get_oracle("lipschitz"), n, model)
        reps_ok &= all(model.distance(approx.representative(x), x) <= F(1, 2 ** n) for x in xs)
    rep.check("representatives_converge", reps_ok)
    for k in range(20):
        cover = random_cover(model, rng)
        parts = lebesgue.disjointify_cover(cover, model)
        refines = all(all(p.startswith(c) for p in part) for part, c in zip(parts, cover))
        rep.check(f"cover{k}", refines and lebesgue.is_partition(parts, model),
                  cover=cover, nonempty_parts=sum(1 for p in parts if p))
    return rep


def refute_family() -> list[tuple[str, lebesgue.CandidateSeq]]:
    fam = []
    C, R = lebesgue.COLUMN_TAG, lebesgue.ROW_TAG
    for k in range(10):
        lvl = F(k, 9)
        fam.append((f"row_const_{k}", lebesgue.CandidateSeq([lebesgue.collapse(R, lvl)])))
        fam.append((f"col_const_{k}", lebesgue.CandidateSeq([lebesgue.collapse(C, lvl)])))
    for m in range(1, 5):
        for tag in (R, C):
            maps = [lebesgue.collapse(tag, F(k, 2 ** m)) for k in range(2 ** m)]
            fam.append((f"sweep_{tag}_{m}", lebesgue.CandidateSeq(maps, 2 ** m)))
            warm = [lebesgue.collapse(tag, F(1, j + 2)) for j in range(5)]
            fam.append((f"sweep_{tag}_{m}_after_warmup", lebesgue.CandidateSeq(warm + maps, 2 ** m)))
    for g in (2, 3, 4, 5):
        for rule in ("centers", "edges"):
            boards = []
            for parity in (0, 1):
                pieces = []
                for i in range(g):
                    for j in range(g):
                        x, y = closed(F(i, g), F(i + 1, g)), closed(F(j, g), F(j + 1, g))
                        tag = R if (i + j + parity) % 2 == 0 else C
                        span = y if tag == R else x
                        level = span.midpoint if rule == "centers" else span.lo
                        pieces.append(lebesgue.Piece(x, y, tag, level))
                boards.append(lebesgue.PiecewiseMap(pieces))
            fam.append((f"checker_{g}_{rule}", lebesgue.CandidateSeq([boards[0]])))
            fam.append((f"checker_{g}_{rule}_alternating", lebesgue.CandidateSeq(boards, 2)))
    return fam


def suite_refute(seed: int = 0) -> Report:
    """Every candidate sequence fails to converge to the identity somewhere."""
    rep = Report("refute", seed)
    insufficient = 0
    for name, cand in refute_family():
        try:
            w = lebesgue.refute_pointwise_identity(cand)
        except lebesgue.InsufficientEvidence as exc:
            insufficient += 1
            rep.check(name, False, error=str(exc))
            continue
        # independent replay: evaluate the candidate along the witness subsequence
        terms = [cand[w.first_index + k * w.period](w.point) for k in range(6)]
        constant_subseq = all(t == w.image for t in terms)
        lim = gamma_limit(SeqSpec(terms[:-1], constant(terms[-1].x), constant(terms[-1].y)))
        not_to_p = lim.converges and lim.limit != w.point
        rep.check(name, constant_subseq and not_to_p and lebesgue.replay_refutation(w),
                  witness=w.to_json())
    rep.stats["family"] = len(rep.checks)
    rep.stats["insufficient_evidence"] = insufficient
    return rep


SUITES = {
    "prop1": suite_prop1,
    "prop3": suite_prop3,
    "prop4": suite_prop4,
    "prop41": suite_prop41,
    "lemma2": suite_lemma2,
    "cor32": suite_cor32,
    "sec5": suite_sec5,
    "refute": suite_refute,
}


def run_suite(name: str, seed: int = 0) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    return fn(seed)
