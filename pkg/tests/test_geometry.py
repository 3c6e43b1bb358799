from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hitset.geometry import (
    HORIZONTAL,
    VERTICAL,
    AffineTransform,
    GeomObject,
    IntersectionKind,
    Kind,
    Orientation,
    Point,
    affine_normalize,
    contains,
    intersect,
    line,
    pt,
    ray,
    segment,
)

from strategies import objects, points


def test_axis_crossing():
    r = intersect(segment(0, 0, 2, 0), segment(1, -1, 1, 1))
    assert r.kind is IntersectionKind.POINT
    assert r.point == pt(1, 0)


def test_collinear_overlap_carries_the_common_piece():
    r = intersect(segment(0, 0, 2, 0), segment(1, 0, 3, 0))
    assert r.kind is IntersectionKind.OVERLAP
    assert set(r.overlap.endpoints()) == {pt(1, 0), pt(2, 0)}


def test_parallel_distinct_lines_miss():
    assert intersect(line(0, 0, 1, 1), line(0, 1, 1, 1)).kind is IntersectionKind.EMPTY


def test_touching_collinear_segments_meet_in_a_point():
    r = intersect(segment(0, 0, 1, 0), segment(1, 0, 2, 0))
    assert r.kind is IntersectionKind.POINT and r.point == pt(1, 0)


def test_rational_crossing_is_exact():
    r = intersect(line(0, 0, 1, 3), line(1, 0, 0, 1))
    assert r.point == Point(Fraction(1), Fraction(3))
    r = intersect(segment(0, 0, 3, 1), segment(0, 1, 3, 0))
    assert r.point == Point(Fraction(3, 2), Fraction(1, 2))


@pytest.mark.parametrize(
    "obj, p, expected",
    [
        (segment(0, 0, 2, 0), pt(2, 0), True),
        (ray(0, 0, 1, 0), pt(-1, 0), False),
        (ray(0, 0, 1, 0), pt(0, 0), True),
        (line(0, 0, 1, 1), pt(3, 3), True),
        (line(0, 0, 1, 1), pt(3, 4), False),
    ],
)
def test_contains(obj, p, expected):
    assert contains(obj, p) is expected


def test_orientation_is_canonical():
    assert Orientation.of(-2, -4) == Orientation.of(1, 2)
    assert Orientation.of(0, -3) == VERTICAL
    assert Orientation.of(Fraction(1, 2), 0) == HORIZONTAL
    with pytest.raises(ValueError):
        Orientation.of(0, 0)


def test_zero_direction_is_rejected():
    with pytest.raises(ValueError):
        GeomObject(Kind.RAY, pt(0, 0), pt(0, 0))


@given(objects(), objects())
def test_intersect_is_symmetric(a, b):
    r1, r2 = intersect(a, b), intersect(b, a)
    assert r1.kind is r2.kind
    if r1.kind is IntersectionKind.POINT:
        assert r1.point == r2.point


@given(objects(), objects())
def test_reported_points_lie_on_both(a, b):
    r = intersect(a, b)
    if r.kind is IntersectionKind.POINT:
        assert contains(a, r.point) and contains(b, r.point)
    if r.kind is IntersectionKind.OVERLAP:
        assert a.orientation == b.orientation
        for p in r.overlap.endpoints():
            assert contains(a, p) and contains(b, p)


class TestAffineNormalize:
    def test_diagonals_become_axis_parallel(self):
        objs = [segment(0, 0, 2, 2), segment(0, 2, 2, 0), line(1, 0, 1, -1)]
        out, T = affine_normalize(objs)
        assert {o.orientation for o in out} == {HORIZONTAL, VERTICAL}
        # the crossing found after the transform hits the originals once mapped back
        r = intersect(out[0], out[1])
        back = T.inverse().apply(r.point)
        assert contains(objs[0], back) and contains(objs[1], back)

    def test_identity_on_axis_parallel_input(self):
        _, T = affine_normalize([segment(0, 0, 1, 0), segment(0, 0, 0, 1)])
        assert T.is_identity

    def test_order_picks_the_horizontal_class(self):
        objs = [segment(0, 0, 1, 1), segment(0, 0, 1, 0)]
        out, _ = affine_normalize(objs, order=(Orientation(1, 1), HORIZONTAL))
        assert out[0].orientation == HORIZONTAL and out[1].orientation == VERTICAL

    @pytest.mark.parametrize("n_classes", [1, 3])
    def test_rejects_wrong_class_count(self, n_classes):
        objs = [line(0, 0, 1, 0), line(0, 0, 0, 1), line(0, 0, 1, 1)][:n_classes]
        with pytest.raises(ValueError):
            affine_normalize(objs)

    @given(st.sampled_from([(1, 1), (1, -1), (2, 1), (1, 3)]), st.sampled_from([(0, 1), (1, 0), (3, -1)]),
           objects(kinds=(Kind.SEGMENT,)), points())
    def test_incidence_preserved(self, d1, d2, obj, p):
        if Orientation.of(*d1) == Orientation.of(*d2):
            return
        base = [line(0, 0, *d1), line(0, 0, *d2)]
        _, T = affine_normalize(base)
        assert contains(obj, p) == contains(T.apply_object(obj), T.apply(p))


def test_transform_inverse_round_trips():
    T = AffineTransform(Fraction(2), Fraction(1), Fraction(1), Fraction(1))
    p = pt(Fraction(1, 3), -5)
    assert T.inverse().apply(T.apply(p)) == p
