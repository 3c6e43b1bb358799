"""Vertical lines and horizontal segments: the two-stage 5/3-approximation.

Stage 1 spends points only where they pay for themselves twice: a point on
an unhit vertical line that also saves one stab among the horizontal
segments (type a), or two points on two unhit lines sharing a row that
together save one stab (type b).  Stage 2 gives every remaining line its
own point and stabs the remaining segments row by row.

The same code handles downward vertical rays: a ray is a line that only
exists at or below its apex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import GeomObject, Kind, Point, VERTICAL, HORIZONTAL
from .instance import HittingSet, Instance
from .stab1d import min_stab_count_with_forced, stab_intervals


@dataclass(frozen=True)
class Vertical:
    """A vertical line (``top`` is None) or a downward ray with apex at ``top``."""

    x: Fraction
    top: Optional[Fraction] = None

    def reaches(self, y: Fraction) -> bool:
        return self.top is None or y <= self.top


@dataclass
class StageOneReport:
    points: list[Point] = field(default_factory=list)
    k1: int = 0
    k2: int = 0
    # index into the vertical list for each placed point, and its type
    owners: list[int] = field(default_factory=list)
    kinds: list[str] = field(default_factory=list)


@dataclass
class VlhsResult:
    hitting_set: HittingSet
    stage1: StageOneReport
    v: int
    h: int
    verticals: list[Vertical]
    rows: dict[Fraction, list[tuple[Fraction, Fraction]]]
    residual_lines: list[int]
    residual_segments: list[tuple[Fraction, Fraction, Fraction]]  # (y, lo, hi)

    @property
    def v_residual(self) -> int:
        return len(self.residual_lines)

    @property
    def h_residual(self) -> int:
        return _h(_rows_of(self.residual_segments))

    def accounting(self) -> int:
        """Size predicted from the initial bounds and the stage-1 counts."""
        k1, k2 = self.stage1.k1, self.stage1.k2
        return (k1 + k2) + (self.h - k1 - k2 // 2) + (self.v - k1 - k2)


def _objects(source) -> list[GeomObject]:
    if isinstance(source, Instance):
        if not source.plain:
            raise ValueError("expected plain objects, not unions")
        return source.objects
    return list(source)


def _split(objects: Sequence[GeomObject], rays: bool):
    verticals: dict[Fraction, Vertical] = {}
    segs = []
    for o in objects:
        if o.kind is Kind.SEGMENT and o.orientation == HORIZONTAL:
            a, b = o.anchor.x, o.end.x
            segs.append((o.anchor.y, min(a, b), max(a, b)))
        elif not rays and o.kind is Kind.LINE and o.orientation == VERTICAL:
            verticals[o.anchor.x] = Vertical(o.anchor.x)
        elif rays and o.kind is Kind.RAY and o.orientation == VERTICAL:
            if o.direction.y > 0:
                raise ValueError(f"upward ray {o!r}: only downward rays are supported")
            cur = verticals.get(o.anchor.x)
            # the ray with the lowest apex is contained in the others
            if cur is None or o.anchor.y < cur.top:
                verticals[o.anchor.x] = Vertical(o.anchor.x, o.anchor.y)
        else:
            want = "downward vertical rays" if rays else "vertical lines"
            raise ValueError(f"{o!r} is not one of {want} or horizontal segments")
    return [verticals[x] for x in sorted(verticals)], segs


def _rows_of(segs) -> dict[Fraction, list[tuple[Fraction, Fraction]]]:
    rows: dict[Fraction, list[tuple[Fraction, Fraction]]] = {}
    for y, lo, hi in segs:
        rows.setdefault(y, []).append((lo, hi))
    return rows


def _h(rows, forced=None) -> int:
    forced = forced or {}
    return sum(min_stab_count_with_forced(ivs, forced.get(y, ())) for y, ivs in rows.items())


def lower_bounds(source, rays: bool = False) -> tuple[int, int]:
    """``(v, h)``: distinct vertical lines, and the optimum for the segments alone."""
    verticals, segs = _split(_objects(source), rays)
    return len(verticals), _h(_rows_of(segs))


def _crossing_rows(vert: Vertical, rows) -> list[Fraction]:
    """Rows where ``vert`` meets some segment, top to bottom."""
    out = [y for y, ivs in rows.items() if vert.reaches(y) and any(lo <= vert.x <= hi for lo, hi in ivs)]
    return sorted(out, reverse=True)


def _stage1(verticals: list[Vertical], rows) -> tuple[StageOneReport, dict]:
    rep = StageOneReport()
    forced: dict[Fraction, list[Fraction]] = {}
    unhit = set(range(len(verticals)))
    crossing = [_crossing_rows(vt, rows) for vt in verticals]
    h = _h(rows)

    def gain(y, xs) -> int:
        before = min_stab_count_with_forced(rows[y], forced.get(y, ()))
        after = min_stab_count_with_forced(rows[y], list(forced.get(y, ())) + list(xs))
        return before - after

    def place(i, y, kind):
        p = Point(verticals[i].x, y)
        rep.points.append(p)
        rep.owners.append(i)
        rep.kinds.append(kind)
        forced.setdefault(y, []).append(p.x)
        unhit.discard(i)

    while True:
        found = False
        # type (a): one point on an unhit line saving one stab
        for i in sorted(unhit):
            for y in crossing[i]:
                if gain(y, [verticals[i].x]) == 1:
                    place(i, y, "typeA")
                    rep.k1 += 1
                    h -= 1
                    found = True
                    break
        if found:
            continue
        # type (b): two points on one row, on two unhit lines, saving one stab
        for y in sorted(rows, reverse=True):
            live = [i for i in sorted(unhit) if y in crossing[i]]
            for a in range(len(live)):
                for b in range(a + 1, len(live)):
                    i, j = live[a], live[b]
                    if gain(y, [verticals[i].x, verticals[j].x]) == 1:
                        place(i, y, "typeB")
                        place(j, y, "typeB")
                        rep.k2 += 2
                        h -= 1
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
    assert h == _h(rows, forced)
    return rep, forced


def stage1(source, rays: bool = False) -> StageOneReport:
    verticals, segs = _split(_objects(source), rays)
    return _stage1(verticals, _rows_of(segs))[0]


def run_vlhs(source, rays: bool = False) -> VlhsResult:
    verticals, segs = _split(_objects(source), rays)
    rows = _rows_of(segs)
    v, h = len(verticals), _h(rows)
    rep, forced = _stage1(verticals, rows)
    hs = HittingSet(solver="vrays53" if rays else "vlhs53")
    for p, kind in zip(rep.points, rep.kinds):
        hs.add(p, kind)
    used = set(rep.owners)
    residual_lines = [i for i in range(len(verticals)) if i not in used]
    # a row below everything (and below every apex) meets no segment
    floor = min([y for y, _, _ in segs] + [vt.top for vt in verticals if vt.top is not None] + [Fraction(0)]) - 1
    for i in residual_lines:
        hs.add(Point(verticals[i].x, floor), "line")
    residual_segments = []
    for y, lo, hi in segs:
        if not any(lo <= x <= hi for x in forced.get(y, ())):
            residual_segments.append((y, lo, hi))
    for y, ivs in sorted(_rows_of(residual_segments).items()):
        for x in stab_intervals(ivs):
            hs.add(Point(x, y), "row")
    return VlhsResult(hs, rep, v, h, verticals, rows, residual_lines, residual_segments)


def solve_vlhs(source) -> HittingSet:
    return run_vlhs(source).hitting_set


def solve_vrays_hs(source) -> HittingSet:
    return run_vlhs(source, rays=True).hitting_set


def residual_instance(res: VlhsResult) -> Instance:
    """The objects still unhit after stage 1, as an instance."""
    from .geometry import ray, segment, vline

    objs = []
    for i in res.residual_lines:
        vt = res.verticals[i]
        objs.append(vline(vt.x) if vt.top is None else ray(vt.x, vt.top, 0, -1))
    for y, lo, hi in res.residual_segments:
        objs.append(segment(lo, y, hi, y))
    return Instance.of(objs)
