"""Interval stabbing on a line: the left-to-right sweep.

Place a point where the first interval ends, drop everything it stabs,
repeat.  Intervals are closed, so a point at a shared coordinate hits both
an interval that ends there and one that starts there.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Optional, Sequence

from .geometry import GeomObject, Kind, Orientation, Point

Interval = tuple[Fraction, Fraction]


@dataclass
class IntervalSet:
    """Closed intervals on one supporting line.

    ``host`` is ``(orientation, offset)`` and ``ids`` traces each interval
    back to its source object.
    """

    intervals: list[Interval] = field(default_factory=list)
    ids: list[Hashable] = field(default_factory=list)
    host: Optional[tuple[Orientation, Fraction]] = None

    def __post_init__(self):
        for lo, hi in self.intervals:
            if lo > hi:
                raise ValueError(f"interval [{lo}, {hi}] has lo > hi")
        if not self.ids:
            self.ids = list(range(len(self.intervals)))

    def add(self, lo: Fraction, hi: Fraction, ident: Hashable = None) -> None:
        if lo > hi:
            raise ValueError(f"interval [{lo}, {hi}] has lo > hi")
        self.intervals.append((lo, hi))
        self.ids.append(len(self.ids) if ident is None else ident)

    def __len__(self) -> int:
        return len(self.intervals)


def _intervals(s) -> Sequence[Interval]:
    return s.intervals if isinstance(s, IntervalSet) else s


def stab_intervals(s) -> list[Fraction]:
    """Minimum set of stab positions (each one a right endpoint)."""
    out: list[Fraction] = []
    last: Optional[Fraction] = None
    for lo, hi in sorted(_intervals(s), key=lambda iv: (iv[1], iv[0])):
        if last is not None and lo <= last:
            continue
        last = hi
        out.append(hi)
    return out


def min_stab_count_with_forced(s, forced: Iterable[Fraction]) -> int:
    """Stabs still needed once the ``forced`` positions are placed."""
    forced = sorted(forced)
    rest = [iv for iv in _intervals(s) if not _stabbed(iv, forced)]
    return len(stab_intervals(rest))


def _stabbed(iv: Interval, sorted_positions: Sequence[Fraction]) -> bool:
    import bisect

    i = bisect.bisect_left(sorted_positions, iv[0])
    return i < len(sorted_positions) and sorted_positions[i] <= iv[1]


# --------------------------------------------------------------------------
# grouping objects by supporting line


def group_collinear(objects: Iterable[tuple[Hashable, GeomObject]], lo_bound: Fraction, hi_bound: Fraction):
    """Bucket objects by supporting line and turn each into an interval.

    Positions are measured along the canonical orientation.  Rays and lines
    are clipped to ``[lo_bound, hi_bound]``; callers pass bounds strictly
    outside every finite coordinate so clipping cannot change the optimum.
    Returns ``{(orientation, offset): IntervalSet}``.
    """
    groups: dict = defaultdict(IntervalSet)
    for ident, o in objects:
        orient = o.orientation
        off = orient.offset(o.anchor)
        a = orient.position(o.anchor)
        if o.kind is Kind.SEGMENT:
            b = orient.position(o.anchor + o.direction)
            lo, hi = min(a, b), max(a, b)
        elif o.kind is Kind.RAY:
            forward = orient.position(o.anchor + o.direction) > a
            lo, hi = (a, hi_bound) if forward else (lo_bound, a)
        else:
            lo, hi = lo_bound, hi_bound
        g = groups[(orient, off)]
        g.host = (orient, off)
        g.add(lo, hi, ident)
    return dict(groups)


def position_bounds(objects: Iterable[GeomObject]) -> tuple[Fraction, Fraction]:
    """Clip window along every orientation: beyond all anchors and endpoints."""
    vals = []
    objects = list(objects)
    orients = {o.orientation for o in objects}
    for o in objects:
        for p in (o.anchor, o.anchor + o.direction):
            for orient in orients:
                vals.append(orient.position(p))
    if not vals:
        return Fraction(-1), Fraction(1)
    span = max(vals) - min(vals) + 1
    return min(vals) - span, max(vals) + span


def stab_objects(objects: Sequence[GeomObject]) -> list[Point]:
    """Exact hitting set for objects that may only share points collinearly.

    Groups by supporting line, stabs each group, and maps stab positions
    back to the plane.
    """
    lo, hi = position_bounds(objects)
    pts = []
    for (orient, off), group in sorted(group_collinear(enumerate(objects), lo, hi).items()):
        for pos in stab_intervals(group):
            pts.append(orient.point_at(off, pos))
    return pts
