"""Greedy hitting sets for lines of two and three slopes."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .geometry import GeomObject, Kind, Orientation, Point, canonical, intersect
from .instance import HittingSet, private_point


def opt2_count(x: int, y: int, z: int) -> int:
    """Optimum for three slope classes of sizes x >= y >= z with no 3-intersections."""
    if not x >= y >= z >= 0:
        raise ValueError(f"need x >= y >= z >= 0, got {(x, y, z)}")
    if x >= y + z:
        return x
    return math.ceil((x + y + z) / 2)


@dataclass
class SlopeCensus:
    x: int
    y: int
    z: int
    classes: tuple[Orientation, ...]  # most populous first


def _dedupe_lines(lines: Sequence[GeomObject]) -> list[GeomObject]:
    out, seen = [], set()
    for ln in lines:
        if ln.kind is not Kind.LINE:
            raise ValueError(f"expected lines only, got {ln.kind.value}")
        key = canonical(ln)
        if key not in seen:
            seen.add(key)
            out.append(ln)
    return out


def _by_class(lines: Sequence[GeomObject]) -> dict[Orientation, list[int]]:
    groups: dict[Orientation, list[int]] = defaultdict(list)
    for i, ln in enumerate(lines):
        groups[ln.orientation].append(i)
    return dict(sorted(groups.items()))


def census(lines: Sequence[GeomObject]) -> SlopeCensus:
    lines = _dedupe_lines(lines)
    groups = _by_class(lines)
    if len(groups) > 3:
        raise ValueError("more than 3 orientations")
    ordered = sorted(groups, key=lambda o: (-len(groups[o]), o))
    counts = [len(groups[o]) for o in ordered] + [0, 0, 0]
    return SlopeCensus(counts[0], counts[1], counts[2], tuple(ordered))


def _meet(a: GeomObject, b: GeomObject) -> Point:
    r = intersect(a, b)
    if r.point is None:
        raise ValueError("lines of distinct slopes must meet")
    return r.point


def _lone_point(ln: GeomObject, lines: Sequence[GeomObject]) -> Point:
    # a point on ln away from every other crossing
    others = [_meet(ln, o) for o in lines if o.orientation != ln.orientation]
    return private_point(ln, others)


def solve_two_slopes(lines: Sequence[GeomObject]) -> HittingSet:
    """Optimal: pair up lines of the two classes, then one point per leftover."""
    lines = _dedupe_lines(lines)
    groups = list(_by_class(lines).values())
    if len(groups) > 2:
        raise ValueError("solve_two_slopes accepts at most 2 orientations")
    hs = HittingSet(solver="two-slope")
    if len(groups) == 2:
        a, b = groups
        for i, j in zip(a, b):
            hs.add(_meet(lines[i], lines[j]))
        rest = a[len(b):] if len(a) > len(b) else b[len(a):]
    else:
        rest = groups[0] if groups else []
    for i in rest:
        hs.add(_lone_point(lines[i], lines))
    return hs


@dataclass(frozen=True)
class TripleIntersection:
    point: Point
    lines: tuple[int, int, int]


def three_intersections(lines: Sequence[GeomObject]) -> list[TripleIntersection]:
    """All points where one line of each of three classes meet, sorted by point."""
    groups = list(_by_class(lines).values())
    if len(groups) < 3:
        return []
    if len(groups) > 3:
        raise ValueError("more than 3 orientations")
    a, b, c = groups
    meets: dict[Point, list[int]] = {}
    for i in a:
        for j in b:
            meets.setdefault(_meet(lines[i], lines[j]), [i, j])
    out = []
    for k in c:
        ck = lines[k]
        for p, (i, j) in meets.items():
            if _on(ck, p):
                out.append(TripleIntersection(p, (i, j, k)))
    out.sort(key=lambda t: t.point)
    return out


def _on(ln: GeomObject, p: Point) -> bool:
    from .geometry import cross

    return cross(ln.direction, p - ln.anchor) == 0


@dataclass
class GreedyTrace:
    triples: list[TripleIntersection]
    phase2: list[tuple[int, int]]
    singles: list[int]


def solve_three_slopes_greedy(lines: Sequence[GeomObject], trace: GreedyTrace | None = None) -> HittingSet:
    """Greedy for lines of at most three slopes.

    Phase 1 takes 3-intersections in lexicographic order while all three of
    their lines are unhit.  Phase 2 repeatedly hits one unhit line from each
    of the two currently most populous classes at their crossing; once only
    one class remains, each of its lines gets its own point.
    """
    lines = _dedupe_lines(lines)
    groups = _by_class(lines)
    if len(groups) > 3:
        raise ValueError("solve_three_slopes_greedy accepts at most 3 orientations")
    hs = HittingSet(solver="three-slope-greedy")
    hit = [False] * len(lines)
    triples = []
    for t in three_intersections(lines):
        if not any(hit[i] for i in t.lines):
            for i in t.lines:
                hit[i] = True
            hs.add(t.point, "3int")
            triples.append(t)
    unhit = {o: [i for i in idx if not hit[i]] for o, idx in groups.items()}
    pairs = []
    while True:
        live = sorted((o for o in unhit if unhit[o]), key=lambda o: (-len(unhit[o]), o))
        if len(live) < 2:
            break
        i = unhit[live[0]].pop(0)
        j = unhit[live[1]].pop(0)
        hs.add(_meet(lines[i], lines[j]))
        pairs.append((i, j))
    singles = [i for o in unhit for i in unhit[o]]
    for i in singles:
        hs.add(_lone_point(lines[i], lines))
    if trace is not None:
        trace.triples, trace.phase2, trace.singles = triples, pairs, singles
    return hs
