"""Exact rational 2D primitives: points, orientations, segments, rays, lines.

Every coordinate is a :class:`fractions.Fraction`; there are no epsilon
comparisons anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Union

Rational = Fraction
Number = Union[int, Fraction, str]


def q(value: Number) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, t: Fraction) -> "Point":
        return Point(self.x * t, self.y * t)

    def __repr__(self) -> str:
        return f"Point({fmt(self.x)}, {fmt(self.y)})"


def pt(x: Number, y: Number) -> Point:
    return Point(q(x), q(y))


def fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def cross(a: Point, b: Point) -> Fraction:
    return a.x * b.y - a.y * b.x


def dot(a: Point, b: Point) -> Fraction:
    return a.x * b.x + a.y * b.y


@dataclass(frozen=True, order=True)
class Orientation:
    """Canonical direction class: coprime integers, first nonzero component positive."""

    dx: int
    dy: int

    @classmethod
    def of(cls, dx: Number, dy: Number) -> "Orientation":
        fx, fy = q(dx), q(dy)
        if fx == 0 and fy == 0:
            raise ValueError("direction (0, 0) has no orientation")
        den = fx.denominator * fy.denominator // math.gcd(fx.denominator, fy.denominator)
        ix, iy = int(fx * den), int(fy * den)
        g = math.gcd(ix, iy)
        ix, iy = ix // g, iy // g
        if ix < 0 or (ix == 0 and iy < 0):
            ix, iy = -ix, -iy
        return cls(ix, iy)

    @property
    def vector(self) -> Point:
        return Point(Fraction(self.dx), Fraction(self.dy))

    def offset(self, p: Point) -> Fraction:
        """Signed offset of the line through ``p``; equal for collinear points."""
        return self.dy * p.x - self.dx * p.y

    def position(self, p: Point) -> Fraction:
        """Coordinate of ``p`` along this orientation (monotone along a line)."""
        return self.dx * p.x + self.dy * p.y

    def point_at(self, offset: Fraction, position: Fraction) -> Point:
        """Inverse of ``(offset, position)``."""
        n = self.dx * self.dx + self.dy * self.dy
        return Point(
            Fraction(self.dx * position + self.dy * offset, n),
            Fraction(self.dy * position - self.dx * offset, n),
        )


HORIZONTAL = Orientation(1, 0)
VERTICAL = Orientation(0, 1)


class Kind(str, Enum):
    SEGMENT = "segment"
    RAY = "ray"
    LINE = "line"


@dataclass(frozen=True)
class GeomObject:
    """A segment, ray or line.

    ``anchor`` is the first endpoint of a segment, the apex of a ray, or any
    point of a line.  ``direction`` is the raw direction vector: for a segment
    it is ``end - anchor``, for a ray it points into the infinite side.
    Points on the object are ``anchor + t * direction`` with ``t`` in
    ``[0, 1]``, ``[0, inf)`` or ``(-inf, inf)`` respectively.
    """

    kind: Kind
    anchor: Point
    direction: Point

    def __post_init__(self):
        if self.direction.x == 0 and self.direction.y == 0:
            raise ValueError(f"degenerate {self.kind.value}: zero direction")

    @property
    def orientation(self) -> Orientation:
        return Orientation.of(self.direction.x, self.direction.y)

    @property
    def end(self) -> Optional[Point]:
        return self.anchor + self.direction if self.kind is Kind.SEGMENT else None

    @property
    def apex(self) -> Point:
        if self.kind is not Kind.RAY:
            raise AttributeError("only rays have an apex")
        return self.anchor

    def t_range(self) -> tuple[Optional[Fraction], Optional[Fraction]]:
        if self.kind is Kind.SEGMENT:
            return Fraction(0), Fraction(1)
        if self.kind is Kind.RAY:
            return Fraction(0), None
        return None, None

    def at(self, t: Fraction) -> Point:
        return self.anchor + self.direction.scale(t)

    def param(self, p: Point) -> Fraction:
        """Parameter ``t`` of a point known to be on the supporting line."""
        d = self.direction
        if d.x != 0:
            return (p.x - self.anchor.x) / d.x
        return (p.y - self.anchor.y) / d.y

    def endpoints(self) -> tuple[Point, ...]:
        if self.kind is Kind.SEGMENT:
            return (self.anchor, self.anchor + self.direction)
        if self.kind is Kind.RAY:
            return (self.anchor,)
        return ()

    def __repr__(self) -> str:
        a, d = self.anchor, self.direction
        if self.kind is Kind.SEGMENT:
            e = self.end
            return f"segment({fmt(a.x)},{fmt(a.y)} -> {fmt(e.x)},{fmt(e.y)})"
        return f"{self.kind.value}({fmt(a.x)},{fmt(a.y)} dir {fmt(d.x)},{fmt(d.y)})"


def segment(x1: Number, y1: Number, x2: Number, y2: Number) -> GeomObject:
    a, b = pt(x1, y1), pt(x2, y2)
    if a == b:
        raise ValueError("segment endpoints must be distinct")
    return GeomObject(Kind.SEGMENT, a, b - a)


def ray(x: Number, y: Number, dx: Number, dy: Number) -> GeomObject:
    return GeomObject(Kind.RAY, pt(x, y), pt(dx, dy))


def line(x: Number, y: Number, dx: Number, dy: Number) -> GeomObject:
    return GeomObject(Kind.LINE, pt(x, y), pt(dx, dy))


def hline(y: Number) -> GeomObject:
    return line(0, y, 1, 0)


def vline(x: Number) -> GeomObject:
    return line(x, 0, 0, 1)


def canonical(obj: GeomObject) -> GeomObject:
    """Representation-independent form, so equal point sets compare equal."""
    o = obj.orientation
    v = o.vector
    if obj.kind is Kind.LINE:
        return GeomObject(Kind.LINE, o.point_at(o.offset(obj.anchor), Fraction(0)), v)
    if obj.kind is Kind.RAY:
        sign = 1 if dot(obj.direction, v) > 0 else -1
        return GeomObject(Kind.RAY, obj.anchor, v.scale(Fraction(sign)))
    a, b = obj.anchor, obj.anchor + obj.direction
    if o.position(b) < o.position(a):
        a, b = b, a
    return GeomObject(Kind.SEGMENT, a, b - a)


# --------------------------------------------------------------------------
# predicates


def contains(obj: GeomObject, p: Point) -> bool:
    """True iff ``p`` lies on ``obj`` (endpoints and apex included)."""
    rel = p - obj.anchor
    if cross(obj.direction, rel) != 0:
        return False
    if obj.kind is Kind.LINE:
        return True
    t = obj.param(p)
    if t < 0:
        return False
    return obj.kind is Kind.RAY or t <= 1


class IntersectionKind(str, Enum):
    EMPTY = "empty"
    POINT = "point"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class IntersectionResult:
    kind: IntersectionKind
    point: Optional[Point] = None
    overlap: Optional[GeomObject] = None

    @property
    def is_empty(self) -> bool:
        return self.kind is IntersectionKind.EMPTY


EMPTY = IntersectionResult(IntersectionKind.EMPTY)


def _in_range(t: Fraction, lo: Optional[Fraction], hi: Optional[Fraction]) -> bool:
    return (lo is None or t >= lo) and (hi is None or t <= hi)


def intersect(a: GeomObject, b: GeomObject) -> IntersectionResult:
    """Exact intersection of two objects.

    >>> intersect(segment(0, 0, 2, 0), segment(1, -1, 1, 1)).point
    Point(1, 0)
    """
    d = cross(a.direction, b.direction)
    w = b.anchor - a.anchor
    if d != 0:
        t = cross(w, b.direction) / d
        u = cross(w, a.direction) / d
        if _in_range(t, *a.t_range()) and _in_range(u, *b.t_range()):
            return IntersectionResult(IntersectionKind.POINT, point=a.at(t))
        return EMPTY
    if cross(a.direction, w) != 0:
        return EMPTY
    return _collinear_overlap(a, b)


def _collinear_overlap(a: GeomObject, b: GeomObject) -> IntersectionResult:
    # Work in a's parameter space; b's range maps through an affine change.
    lo_a, hi_a = a.t_range()
    b_lo, b_hi = b.t_range()
    s0 = a.param(b.anchor)
    s1 = a.param(b.anchor + b.direction) - s0  # scale of b's parameter in a's

    def conv(t):
        return None if t is None else s0 + s1 * t

    lo_b, hi_b = conv(b_lo), conv(b_hi)
    if s1 < 0:
        lo_b, hi_b = hi_b, lo_b
    # an unbounded end of b flips with the sign of s1
    if b.kind is Kind.RAY:
        if s1 > 0:
            lo_b, hi_b = s0, None
        else:
            lo_b, hi_b = None, s0
    lo = _max_opt(lo_a, lo_b)
    hi = _min_opt(hi_a, hi_b)
    if lo is not None and hi is not None:
        if lo > hi:
            return EMPTY
        if lo == hi:
            return IntersectionResult(IntersectionKind.POINT, point=a.at(lo))
        start = a.at(lo)
        return IntersectionResult(
            IntersectionKind.OVERLAP, overlap=canonical(GeomObject(Kind.SEGMENT, start, a.at(hi) - start))
        )
    if lo is None and hi is None:
        return IntersectionResult(IntersectionKind.OVERLAP, overlap=canonical(GeomObject(Kind.LINE, a.anchor, a.direction)))
    if lo is not None:
        return IntersectionResult(IntersectionKind.OVERLAP, overlap=canonical(GeomObject(Kind.RAY, a.at(lo), a.direction)))
    return IntersectionResult(
        IntersectionKind.OVERLAP, overlap=canonical(GeomObject(Kind.RAY, a.at(hi), a.direction.scale(Fraction(-1))))
    )


def _max_opt(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return max(x, y)


def _min_opt(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


# --------------------------------------------------------------------------
# affine normalization


@dataclass(frozen=True)
class AffineTransform:
    """Linear map ``p -> M p`` with an exact inverse."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def apply(self, p: Point) -> Point:
        return Point(self.a * p.x + self.b * p.y, self.c * p.x + self.d * p.y)

    def inverse(self) -> "AffineTransform":
        det = self.det
        return AffineTransform(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def apply_object(self, obj: GeomObject) -> GeomObject:
        return GeomObject(obj.kind, self.apply(obj.anchor), self.apply(obj.direction))

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)


IDENTITY = AffineTransform(Fraction(1), Fraction(0), Fraction(0), Fraction(1))


def affine_normalize(objects, order=None):
    """Map a two-orientation family onto horizontal and vertical objects.

    ``order`` optionally fixes which orientation becomes horizontal (first)
    and which vertical (second); by default a class that is already horizontal
    or vertical keeps its direction, otherwise sorted order is used.
    Returns ``(objects, transform)``; ``transform.inverse()`` carries hit
    points found for the output back to the input.
    """
    objects = list(objects)
    classes = sorted({o.orientation for o in objects})
    if len(classes) != 2:
        raise ValueError(f"affine_normalize needs exactly 2 orientations, got {len(classes)}")
    if order is None:
        order = (classes[1], classes[0]) if HORIZONTAL in classes[1:] or VERTICAL in classes[:1] else classes
    first, second = order
    if {first, second} != set(classes):
        raise ValueError("order does not match the orientations present")
    if first == HORIZONTAL and second == VERTICAL:
        return objects, IDENTITY
    # columns of the inverse are the two directions
    u, v = first.vector, second.vector
    inv = AffineTransform(u.x, v.x, u.y, v.y)
    fwd = inv.inverse()
    return [fwd.apply_object(o) for o in objects], fwd
