from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toposlang.intervals import Interval, IntervalSet, interval_op


def iv(lo, lc, hi, hc):
    return IntervalSet.interval(lo, lc, hi, hc)


def test_intersection_of_overlapping_closed_intervals():
    assert iv(1, True, 3, True).intersect(iv(2, True, 5, True)) == iv(2, True, 3, True)


def test_member_decides_exactly():
    assert iv(2, True, 5, True).member(Fraction(5, 2))
    assert not iv(2, True, 5, True).member(Fraction(11, 2))
    assert iv(2, True, 5, True).member(2) and iv(2, True, 5, True).member(5)
    assert not iv(2, False, 5, True).member(2)


def test_complement_of_open_unit_interval():
    # endpoint case analysis: 0 and 1 flip to closed, interior drops out
    expected = IntervalSet.from_parts([
        Interval(None, False, Fraction(0), True),
        Interval(Fraction(1), True, None, False),
    ])
    assert iv(0, False, 1, False).complement() == expected


def test_union_merges_adjacent_intervals():
    assert iv(1, True, 2, True).union(iv(2, False, 3, False)) == iv(1, True, 3, False)
    # both ends open at the shared point: the gap point stays out
    two = iv(1, True, 2, False).union(iv(2, False, 3, False))
    assert len(two.parts) == 2
    assert not two.member(2)


def test_degenerate_and_empty_normal_forms():
    assert iv(1, False, 1, False).is_empty
    assert iv(1, False, 1, True).is_empty
    assert IntervalSet.point(1) == iv(1, True, 1, True)
    assert str(IntervalSet.empty()) == "empty"
    assert str(IntervalSet.full()) == "(-inf,+inf)"


def test_interval_op_dispatch():
    a, b = iv(1, True, 3, True), iv(2, True, 5, True)
    assert interval_op("intersect", a, b) == iv(2, True, 3, True)
    assert interval_op("union", a, b) == iv(1, True, 5, True)
    assert interval_op("complement", IntervalSet.empty()) == IntervalSet.full()
    assert interval_op("member", a, 2) is True
    with pytest.raises(ValueError):
        interval_op("nope", a, b)


# -- property tests against a membership-probe oracle -------------------------

fractions_st = st.fractions(min_value=-8, max_value=8, max_denominator=4)


@st.composite
def interval_sets(draw):
    parts = []
    for _ in range(draw(st.integers(0, 4))):
        lo = draw(st.one_of(st.none(), fractions_st))
        hi = draw(st.one_of(st.none(), fractions_st))
        lc = lo is not None and draw(st.booleans())
        hc = hi is not None and draw(st.booleans())
        parts.append(Interval(lo, lc, hi, hc))
    return IntervalSet.from_parts(parts)


def probes(*sets):
    """Endpoints, midpoints between consecutive endpoints, and outer points."""
    pts = set()
    for s in sets:
        for p in s.parts:
            if p.lo is not None:
                pts.add(p.lo)
            if p.hi is not None:
                pts.add(p.hi)
    if not pts:
        return [Fraction(0)]
    ordered = sorted(pts)
    out = [ordered[0] - 1, ordered[-1] + 1] + ordered
    out += [(a + b) / 2 for a, b in zip(ordered, ordered[1:])]
    return out


@settings(max_examples=200, deadline=None)
@given(interval_sets(), interval_sets())
def test_boolean_semantics_via_probes(a, b):
    u, i, c = a.union(b), a.intersect(b), a.complement()
    for q in probes(a, b, u, i, c):
        assert u.member(q) == (a.member(q) or b.member(q))
        assert i.member(q) == (a.member(q) and b.member(q))
        assert c.member(q) == (not a.member(q))


@settings(max_examples=200, deadline=None)
@given(interval_sets())
def test_normal_form_is_sorted_disjoint_nonadjacent(a):
    assert a.complement().complement() == a
    for p in a.parts:
        assert not p.is_empty
    for cur, nxt in zip(a.parts, a.parts[1:]):
        assert cur.hi_key < nxt.lo_key
        # a shared endpoint with at least one closed side would have merged
        if cur.hi is not None and nxt.lo is not None and cur.hi == nxt.lo:
            assert not cur.hi_closed and not nxt.lo_closed
