from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crosstopo.exactset import (
    Box,
    Interval,
    SeqSpec,
    SeqTrace,
    SetDesc,
    SinglePoint,
    TailFormula,
    closed,
    constant,
    cross_of_finite,
    hseg,
    is_tau_closed,
    is_tau_open,
    open_,
    pt,
    unit_square,
    vseg,
)
from crosstopo.gammatop import (
    COMPLEMENT,
    GammaCompactCert,
    PreconditionError,
    Refusal,
    gamma_closure_contains,
    gamma_interior_contains,
    gamma_limit,
    gamma_radius,
    is_gamma_compact,
    is_gamma_open,
    local_coincidence_neighborhood,
    recheck_gamma_limit,
    replay_cover,
    verify_gamma_discrete,
)
from crosstopo.suites import prop4_catalog

HALF = F(1, 2)


def test_gamma_open_examples():
    assert is_gamma_open(SetDesc([Box(open_(0, 1), open_(0, 1))]))
    single_cross = SetDesc([vseg(HALF, open_(0, 1)), hseg(HALF, open_(0, 1))])
    assert not is_gamma_open(single_cross)
    assert not gamma_interior_contains(single_cross, pt(HALF, F(1, 4)))
    # the centre does have a cross neighborhood
    assert gamma_interior_contains(single_cross, pt(HALF, HALF))
    trace = SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 1), TailFormula(0, 1, 2)))])
    assert is_gamma_open(trace, COMPLEMENT)


def test_injective_trace_is_gamma_closed_but_not_tau_closed():
    trace = SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 1), TailFormula(0, 1, 2)))])
    assert is_gamma_open(trace, COMPLEMENT)
    assert not is_tau_closed(trace)
    assert not gamma_closure_contains(trace, pt(0, 0))


def test_constant_row_tail_accumulates_in_gamma():
    row = SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 1), constant(HALF)))])
    assert not is_gamma_open(row, COMPLEMENT)
    assert gamma_closure_contains(row, pt(0, HALF))


def test_discrete_examples():
    assert verify_gamma_discrete(SeqSpec((), TailFormula(0, 1, 1), TailFormula(0, 1, 2))).certified
    res = verify_gamma_discrete([pt(0, 0), pt(0, 1)])
    assert not res.certified
    assert res.counterexample["coordinate"] == "x"
    assert not verify_gamma_discrete(SeqSpec((), constant(HALF), constant(HALF))).certified


def test_discrete_prefix_collision_with_tail():
    seq = SeqSpec((pt(F(1, 3), 1),), TailFormula(0, 1, 1), TailFormula(0, 1, 2))
    res = verify_gamma_discrete(seq)
    assert not res.certified
    # the tail term at n = 2 is (1/3, 1/4)
    assert res.counterexample["indices"] == [1, 2]


def test_coincidence_examples():
    res = local_coincidence_neighborhood([HALF], [HALF], pt(HALF, HALF))
    assert res.U == open_(0, 1) and res.V == open_(0, 1) and res.c == pt(HALF, HALF)
    res = local_coincidence_neighborhood([F(1, 4), F(3, 4)], [HALF], pt(F(1, 4), HALF))
    assert res.U == open_(0, HALF) and res.V == open_(0, 1) and res.c == pt(F(1, 4), HALF)
    res = local_coincidence_neighborhood([F(1, 4), F(3, 4)], [HALF], pt(F(3, 4), F(1, 4)))
    assert F(3, 4) in res.U and F(1, 4) not in res.U
    assert F(1, 4) in res.V and HALF not in res.V
    assert res.c == pt(F(3, 4), HALF) and res.verified
    with pytest.raises(PreconditionError):
        local_coincidence_neighborhood([HALF], [HALF], pt(F(1, 3), F(1, 3)))


def test_compact_examples():
    one_cross = SetDesc([vseg(0, closed(0, 1)), hseg(0, closed(0, 1))])
    cert = is_gamma_compact(one_cross)
    assert isinstance(cert, GammaCompactCert)
    assert cert.cross_cover == (pt(0, 0),)
    assert replay_cover(one_cross, cert.cross_cover).ok
    ref = is_gamma_compact(unit_square())
    assert isinstance(ref, Refusal) and ref.condition == 2
    ref = is_gamma_compact(SetDesc([vseg(0, open_(0, 1))]))
    assert isinstance(ref, Refusal) and ref.condition == 1


def test_compact_cover_is_minimal():
    pts = [pt(F(1, 7), F(2, 7)), pt(F(1, 7), F(3, 7)), pt(F(5, 7), F(3, 7))]
    k = SetDesc([SinglePoint(p) for p in pts])
    cert = is_gamma_compact(k)
    # one column and one row suffice, paired into a single point
    assert cert.cross_cover == (pt(F(1, 7), F(3, 7)),)
    assert replay_cover(k, cert.cross_cover).ok


def test_limit_examples():
    res = gamma_limit(SeqSpec((), constant(0), TailFormula(0, 1, 1)))
    assert res.converges and res.limit == pt(0, 0) and res.tail_index == 1
    res = gamma_limit(SeqSpec((), TailFormula(0, 1, 1), TailFormula(0, 1, 1)))
    assert res.verdict == "diverges"
    res = gamma_limit(SeqSpec((), constant(HALF), constant(HALF)))
    assert res.converges and res.limit == pt(HALF, HALF) and res.tail_index == 1


def test_limit_tail_index_moves_into_prefix():
    seq = SeqSpec((pt(1, 1), pt(0, F(1, 3))), constant(0), TailFormula(0, 1, 1))
    res = gamma_limit(seq)
    assert res.tail_index == 2
    assert recheck_gamma_limit(seq, res)


# -- properties ---------------------------------------------------------------

levels = st.integers(0, 8).map(lambda k: F(k, 8))


@st.composite
def intervals(draw):
    lo, hi = sorted(draw(st.lists(levels, min_size=2, max_size=2, unique=True)))
    return Interval(lo, hi, draw(st.booleans()), draw(st.booleans()))


@st.composite
def setdescs(draw):
    parts = []
    for _ in range(draw(st.integers(1, 3))):
        kind = draw(st.sampled_from(["box", "hseg", "vseg", "point"]))
        if kind == "box":
            parts.append(Box(draw(intervals()), draw(intervals())))
        elif kind == "hseg":
            parts.append(hseg(draw(levels), draw(intervals())))
        elif kind == "vseg":
            parts.append(vseg(draw(levels), draw(intervals())))
        else:
            parts.append(SinglePoint(pt(draw(levels), draw(levels))))
    dels = draw(st.lists(st.tuples(levels, levels), max_size=2))
    return SetDesc(parts, {pt(x, y) for x, y in dels})


@settings(max_examples=150, deadline=None)
@given(setdescs())
def test_tau_open_implies_gamma_open(s):
    if is_tau_open(s):
        assert is_gamma_open(s)


@settings(max_examples=150, deadline=None)
@given(setdescs(), st.integers(0, 16), st.integers(0, 16))
def test_gamma_radius_is_sound(s, i, j):
    p = pt(F(i, 16), F(j, 16))
    if not s.contains(p):
        return
    r = gamma_radius(s, p)
    if r is None:
        assert not gamma_interior_contains(s, p)
        return
    assert r > 0
    for k in range(-8, 9):
        d = r * F(k, 8)
        if 0 <= p.x + d <= 1:
            assert s.contains(pt(p.x + d, p.y))
        if 0 <= p.y + d <= 1:
            assert s.contains(pt(p.x, p.y + d))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(levels, levels), min_size=1, max_size=4))
def test_finite_cross_is_gamma_closed_union_of_crosses(points):
    ps = [pt(x, y) for x, y in points]
    cross = cross_of_finite(ps)
    full = SetDesc([vseg(p.x, closed(0, 1)) for p in ps] + [hseg(p.y, closed(0, 1)) for p in ps])
    for i in range(17):
        for j in range(17):
            q = pt(F(i, 16), F(j, 16))
            assert (q in cross) == full.contains(q)
    assert is_gamma_open(full, COMPLEMENT)
    cert = is_gamma_compact(full)
    assert isinstance(cert, GammaCompactCert)
    assert replay_cover(full, cert.cross_cover).ok


def test_monotonicity_on_catalog():
    for name, s in prop4_catalog():
        if is_tau_open(s):
            assert is_gamma_open(s), name
