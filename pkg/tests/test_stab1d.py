import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hitset.geometry import contains, ray, segment, vline, line
from hitset.stab1d import IntervalSet, min_stab_count_with_forced, stab_intervals, stab_objects


def brute_min(intervals) -> int:
    """Smallest subset of endpoints stabbing everything."""
    cands = sorted({v for iv in intervals for v in iv})
    for k in range(len(intervals) + 1):
        for combo in itertools.combinations(cands, k):
            if all(any(lo <= c <= hi for c in combo) for lo, hi in intervals):
                return k
    raise AssertionError("unreachable")


intervals = st.lists(
    st.tuples(st.integers(0, 10), st.integers(0, 4)).map(lambda t: (Fraction(t[0]), Fraction(t[0] + t[1]))),
    max_size=8,
)


def test_empty():
    assert stab_intervals([]) == []


def test_small_example():
    assert stab_intervals([(0, 2), (1, 3), (4, 5)]) == [2, 5]


def test_disjoint_need_one_each():
    ivs = [(3 * k, 3 * k + 1) for k in range(6)]
    assert len(stab_intervals(ivs)) == 6


def test_closed_ends_share_a_point():
    assert stab_intervals([(0, 1), (1, 2)]) == [1]


def test_interval_set_rejects_reversed():
    with pytest.raises(ValueError):
        IntervalSet([(Fraction(2), Fraction(1))])


@given(intervals)
def test_optimal_against_brute_force(ivs):
    pos = stab_intervals(ivs)
    assert all(any(lo <= p <= hi for p in pos) for lo, hi in ivs)
    assert len(pos) == brute_min(ivs)
    # every stab sits on a right endpoint
    assert set(pos) <= {hi for _, hi in ivs}


class TestForced:
    def test_no_forced_matches_plain(self):
        ivs = [(0, 2), (1, 3), (4, 5)]
        assert min_stab_count_with_forced(ivs, []) == len(stab_intervals(ivs))

    def test_forced_inside_single(self):
        assert min_stab_count_with_forced([(0, 4)], [2]) == 0

    def test_small_example(self):
        assert min_stab_count_with_forced([(0, 2), (1, 3), (4, 5)], [1]) == 1

    @given(intervals, st.lists(st.integers(0, 14).map(Fraction), max_size=3), st.integers(0, 14).map(Fraction))
    def test_monotone_and_exact(self, ivs, forced, extra):
        a = min_stab_count_with_forced(ivs, forced)
        b = min_stab_count_with_forced(ivs, forced + [extra])
        assert b <= a
        rest = [(lo, hi) for lo, hi in ivs if not any(lo <= f <= hi for f in forced)]
        assert a == brute_min(rest)


def test_stab_objects_per_supporting_line():
    objs = [segment(0, 0, 2, 0), segment(1, 0, 3, 0), segment(0, 1, 1, 1), ray(5, 0, 1, 0), vline(7), vline(7)]
    pts = stab_objects([o for o in objs if o.orientation == objs[0].orientation])
    assert len(pts) == 3
    assert all(any(contains(o, p) for p in pts) for o in objs[:4])
    assert len(stab_objects(objs[4:])) == 1


def test_stab_objects_diagonal():
    objs = [segment(0, 0, 2, 2), segment(1, 1, 3, 3), line(0, 1, 1, 1)]
    pts = stab_objects(objs)
    assert len(pts) == 2 and all(any(contains(o, p) for p in pts) for o in objs)
