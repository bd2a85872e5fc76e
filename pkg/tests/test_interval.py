import itertools

import pytest
from hypothesis import given, strategies as st

from ac_lattice import (
    Antichain,
    Interval,
    PreconditionError,
    Universe,
    interval_from_poset,
    is_interval_poset,
    join,
    leq,
    lift_interval,
    max_ac,
    meet,
    size_brute,
    size_even_odd,
    underlying_poset,
)
from ac_lattice.interval import clamp, interval_intersect, pred, spanning_part, strip_common
from ac_lattice.oracle import enumerate_interval

from conftest import ac, antichains, intervals

U3 = Universe(3)
EXAMPLE = Interval(ac(3, [1]), ac(3, [1, 2, 3]))


def masks(n, *sets):
    u = Universe(n)
    return {u.mask(s) for s in sets}


class TestIntervalBasics:
    def test_empty_iff_not_leq(self):
        assert Interval(ac(3, [1, 2]), ac(3, [1])).is_empty
        assert not EXAMPLE.is_empty
        assert size_brute(Interval(ac(3, [1, 2]), ac(3, [1]))) == 0

    def test_contains(self):
        assert ac(3, [1], [2, 3]) in EXAMPLE
        assert ac(3, [2]) not in EXAMPLE

    def test_intersect_examples(self):
        i1 = Interval(ac(3, [1]), ac(3, [1, 2]))
        i2 = Interval(ac(3, [2]), ac(3, [1, 2]))
        assert interval_intersect(i1, i2) == Interval(ac(3, [1], [2]), ac(3, [1, 2]))
        assert interval_intersect(EXAMPLE, EXAMPLE) == EXAMPLE
        u2 = Universe(2)
        i = interval_intersect(Interval(u2.bottom, ac(2, [1])), Interval(ac(2, [2]), ac(2, [2])))
        assert i.is_empty and i.bottom == ac(2, [2])

    @given(st.data())
    def test_intersect_matches_membership(self, data):
        i1 = data.draw(intervals(max_n=3, min_n=3))
        i2 = data.draw(intervals(max_n=3, min_n=3))
        both = set(enumerate_interval(i1)) & set(enumerate_interval(i2))
        assert set(enumerate_interval(interval_intersect(i1, i2))) == both

    def test_clamp_examples(self):
        i = Interval(ac(3, [1]), ac(3, [1, 2]))
        assert clamp(i, ac(3, [2])) == ac(3, [1], [2])
        assert clamp(i, i.bottom) == i.bottom
        assert clamp(i, U3.top) == i.top

    @given(intervals(max_n=4), st.data())
    def test_clamp_is_a_homomorphism_onto(self, i, data):
        n = i.universe.n
        x, y = data.draw(antichains(n)), data.draw(antichains(n))
        cx, cy = clamp(i, x), clamp(i, y)
        assert cx in i
        assert clamp(i, join(x, y)) == join(cx, cy)
        assert clamp(i, meet(x, y)) == meet(cx, cy)
        assert clamp(i, cx) == cx


class TestPred:
    def test_examples(self):
        assert pred(0b111, U3) == ac(3, [1, 2], [1, 3], [2, 3])
        assert pred(0b001, U3) == ac(3, [])
        assert pred(0, U3) == U3.bottom


class TestUnderlyingPoset:
    def test_worked_example(self):
        p = underlying_poset(EXAMPLE)
        assert p.as_set() == masks(3, [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3])
        assert (p.m, p.M) == (1, 3)
        assert p.format_levels() == ["level 1: {2},{3}", "level 2: {1,2},{1,3},{2,3}", "level 3: {1,2,3}"]

    def test_singleton_interval(self):
        p = underlying_poset(Interval(EXAMPLE.bottom, EXAMPLE.bottom))
        assert len(p) == 0 and p.m is None

    def test_full_lattice_n2(self):
        u = Universe(2)
        assert underlying_poset(Interval.full(u)).as_set() == {0, 1, 2, 3}

    def test_empty_interval_rejected(self):
        with pytest.raises(PreconditionError):
            underlying_poset(Interval(ac(3, [1, 2]), ac(3, [1])))

    @given(intervals(max_n=4))
    def test_matches_definition(self, i):
        u = i.universe
        want = {x for x in range(u.full + 1)
                if not leq(_single(u, x), i.bottom) and leq(_single(u, x), i.top)}
        assert underlying_poset(i).as_set() == want

    @given(intervals(max_n=4))
    def test_spans_the_interval(self, i):
        p = underlying_poset(i).as_set()
        for gamma in enumerate_interval(i):
            rest = spanning_part(i, gamma)
            assert set(rest.sets) <= p
            assert join(i.bottom, rest) == gamma


def _single(u, x):
    return Antichain(u, [x])


class TestIntervalPosets:
    def test_examples(self):
        assert not is_interval_poset(masks(3, [1], [1, 2, 3]))
        assert is_interval_poset(underlying_poset(EXAMPLE).sets)
        assert is_interval_poset(set())

    @given(st.sets(st.integers(0, 15), max_size=9))
    def test_convexity_by_brute_force(self, family):
        want = all(c in family
                   for a1, a2 in itertools.product(family, repeat=2) if a1 & ~a2 == 0
                   for c in range(16) if a1 & ~c == 0 and c & ~a2 == 0)
        assert is_interval_poset(family) == want

    def test_from_poset_examples(self):
        assert interval_from_poset(underlying_poset(EXAMPLE)) == EXAMPLE
        assert interval_from_poset(set(), U3) == Interval(U3.bottom, U3.bottom)
        u2 = Universe(2)
        assert interval_from_poset({0, 1, 2, 3}, u2) == Interval(u2.bottom, u2.top)

    def test_from_poset_rejects_non_convex(self):
        with pytest.raises(PreconditionError):
            interval_from_poset(masks(3, [1], [1, 2, 3]), U3)

    @given(intervals(max_n=4))
    def test_round_trip_and_size(self, i):
        p = underlying_poset(i)
        assert is_interval_poset(p.sets)
        back = interval_from_poset(p)
        assert underlying_poset(back).as_set() == p.as_set()
        assert size_brute(back) == size_brute(i)

    def test_incomparable_parts_multiply(self):
        # {1},{1,2} and {3},{3,4}: no member of one is comparable to a member of the other
        u = Universe(4)
        s1, s2 = masks(4, [1], [1, 2]), masks(4, [3], [3, 4])
        assert is_interval_poset(s1 | s2)
        size = lambda s: size_brute(interval_from_poset(s, u))
        assert size(s1 | s2) == size(s1) * size(s2)


class TestStripAndLift:
    def test_strip_common(self):
        assert strip_common(masks(3, [1, 2], [1, 3])) == (masks(3, [2], [3]), 0b001)
        assert strip_common(masks(3, [1])) == ({0}, 0b001)
        s = masks(3, [1], [2, 3])
        assert strip_common(s) == (s, 0)

    def test_stripped_poset_spans_isomorphic_interval(self):
        s = masks(3, [1, 2], [1, 3], [1, 2, 3])
        stripped, _ = strip_common(s)
        assert size_brute(interval_from_poset(s, U3)) == size_brute(interval_from_poset(stripped, U3))

    def test_lift_example(self):
        lifted = lift_interval(ac(3, [1]), ac(3, [1, 2]), 0b100)
        assert lifted == Interval(ac(3, [1, 2], [1, 3]), ac(3, [1, 2, 3]))
        assert size_brute(lifted) == size_brute(Interval(ac(3, [1]), ac(3, [1, 2]))) == 3

    def test_lift_of_singleton(self):
        chi = ac(3, [1], [2])
        assert size_brute(lift_interval(chi, chi, 0b100)) == 1

    def test_lift_preconditions(self):
        with pytest.raises(PreconditionError):
            lift_interval(ac(3, [1]), ac(3, [1, 2]), 0b010)
        with pytest.raises(PreconditionError):
            lift_interval(ac(3, [1, 2]), ac(3, [1]), 0b100)
        with pytest.raises(PreconditionError):
            lift_interval(ac(3, [1]), ac(3, [1, 2]), 0)

    @given(st.data())
    def test_lift_keeps_size(self, data):
        n = data.draw(st.integers(1, 4))
        u = Universe(n)
        a = data.draw(st.integers(1, u.full))
        within = u.full & ~a
        x = data.draw(antichains(n))
        y = data.draw(antichains(n))
        x = max_ac((s & within for s in x.sets), u)
        y = max_ac((s & within for s in y.sets), u)
        lo, hi = meet(x, y), join(x, y)
        lifted = lift_interval(lo, hi, a)
        assert size_brute(lifted) == size_brute(Interval(lo, hi)) == size_even_odd(lifted)
