from fractions import Fraction as F

import pytest

from crosstopo.exactset import (
    Box,
    Interval,
    Point,
    SeqSpec,
    SeqTrace,
    SetDesc,
    SinglePoint,
    TailFormula,
    UndecidedError,
    ValidationError,
    as_rational,
    closed,
    constant,
    contains,
    cross_of_finite,
    cross_of_point,
    first_not_in,
    hseg,
    is_subset,
    is_tau_closed,
    is_tau_open,
    open_,
    pt,
    same_set,
    tau_radius,
    unit_square,
    vseg,
)

HALF = F(1, 2)


def test_rational_parsing():
    assert as_rational("3/6") == HALF
    assert as_rational(" -2 ") == -2
    assert as_rational(F(1, 3)) == F(1, 3)
    for bad in ("1/0", "0.5", "a/b", 0.5):
        with pytest.raises(ValidationError):
            as_rational(bad)


def test_point_must_lie_in_square():
    with pytest.raises(ValidationError):
        pt("3/2", 0)


def test_malformed_primitives_are_rejected():
    with pytest.raises(ValidationError):
        Interval(F(1), F(0))
    with pytest.raises(ValidationError):
        Interval(F(1, 2), F(1, 2), True, False)
    with pytest.raises(ValidationError):
        Box(closed(0, 0), closed(0, 1))
    with pytest.raises(ValidationError):
        SeqSpec((), TailFormula(2, 1, 1), constant(0))


def test_contains_examples():
    assert contains(unit_square(), pt(HALF, HALF))
    diag = SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 0), TailFormula(0, 1, 0)))])
    assert contains(diag, pt(F(1, 3), F(1, 3)))
    assert not contains(diag, pt(F(2, 7), F(2, 7)))
    assert not contains(diag, pt(0, 0))
    assert not contains(SetDesc([Box(open_(0, 1), open_(0, 1))]), pt(0, HALF))


def test_deletions_override_parts():
    s = SetDesc([hseg(HALF, closed(0, 1))], {pt(HALF, HALF)})
    assert not s.contains(pt(HALF, HALF))
    assert s.contains(pt(F(1, 3), HALF))


def test_seqspec_indexing_is_one_based():
    s = SeqSpec((pt(1, 1),), TailFormula(0, 1, 0), constant(0))
    assert s.tail_start == 2
    assert s[1] == pt(1, 1)
    assert s[2] == pt(HALF, 0)
    assert s.limit == pt(0, 0)
    assert s.tail_indices_of(pt(F(1, 5), 0)) == [5]


def test_tail_formula_negative_amplitude():
    f = TailFormula(F(1, 2), F(-1), F(1))
    assert f(1) == 0
    assert f.index_of(F(1, 4), 1) == 3
    first, last = f.n_range(closed(F(1, 4), F(1, 3)), 1)
    assert (first, last) == (3, 5)


def test_cross_examples():
    c = cross_of_point(pt(0, 0))
    assert c.rows == {0} and c.cols == {0}
    c = cross_of_finite([pt(0, 0), pt(HALF, F(1, 3))])
    assert c.rows == {0, F(1, 3)} and c.cols == {0, HALF}
    assert cross_of_finite([]).is_empty


def test_tau_open_examples():
    assert is_tau_open(SetDesc([Box(open_(0, 1), open_(0, 1))]))
    assert not is_tau_open(SetDesc([vseg(0, closed(0, 1)), hseg(0, closed(0, 1))]))
    assert is_tau_open(SetDesc(unit_square().parts, {pt(HALF, HALF)}))
    assert is_tau_open(unit_square())


def test_tau_closed():
    assert is_tau_closed(unit_square())
    assert not is_tau_closed(SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 1), constant(HALF)))]))
    assert is_tau_closed(SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 1), constant(HALF))),
                                  SinglePoint(pt(0, HALF))]))
    assert not is_tau_closed(SetDesc([hseg(HALF, open_(0, 1))]))


def test_tau_radius_box_is_contained():
    s = SetDesc([Box(open_(F(1, 4), F(3, 4)), open_(F(1, 4), F(3, 4)))])
    p = pt(F(1, 3), F(1, 2))
    r = tau_radius(s, p)
    assert r is not None and r > 0
    for dx in (-r, 0, r):
        for dy in (-r, 0, r):
            assert s.contains(pt(p.x + dx, p.y + dy))


def test_subset_and_equality():
    left = SetDesc([hseg(HALF, closed(0, HALF))])
    right = SetDesc([hseg(HALF, closed(HALF, 1))])
    whole = SetDesc([hseg(HALF, closed(0, 1))])
    assert same_set(left | right, whole)
    assert is_subset(left, whole)
    miss = first_not_in(whole, left)
    assert miss is not None and whole.contains(miss) and not left.contains(miss)


def test_subset_of_trace_by_trace_is_undecided():
    # every term of the shifted trace is a term of the other, but the check
    # would have to match infinitely many points
    a = SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 2), TailFormula(0, 1, 3)))])
    b = SetDesc([SeqTrace(SeqSpec((), TailFormula(0, 1, 1), TailFormula(0, 1, 2)))])
    assert first_not_in(b, a) == pt(HALF, F(1, 3))
    with pytest.raises(UndecidedError):
        is_subset(a, b)


def test_json_round_trip_shape():
    s = SetDesc([Box(closed(0, HALF), open_(0, 1)), SinglePoint(Point(F(1), F(0)))])
    doc = s.to_json()
    assert doc["parts"][0]["kind"] == "box"
    assert doc["parts"][1]["at"] == ["1", "0"]
