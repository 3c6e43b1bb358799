"""Arrangement graphs of segments, and the peeling 3-approximation.

The peeling process repeatedly removes a vertex of degree at most 3.
Segments ending there shrink to their next vertex; a segment passing
through keeps its two edges joined into one.  When a segment shrinks to
a single vertex, that vertex becomes a hit point and every segment through
it is discarded.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .geometry import GeomObject, IntersectionKind, Kind, Point, contains, cross, intersect
from .instance import HittingSet, Instance


class OverlapError(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"segments {i} and {j} overlap")
        self.pair = (i, j)


class NotTriangleFree(ValueError):
    pass


def _angle_cmp(a: Point, b: Point) -> int:
    # counter-clockwise order starting from the positive x axis, exact
    ha = 0 if (a.y > 0 or (a.y == 0 and a.x > 0)) else 1
    hb = 0 if (b.y > 0 or (b.y == 0 and b.x > 0)) else 1
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass
class ArrangementGraph:
    points: list[Point] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)  # (u, v, segment)
    paths: list[list[int]] = field(default_factory=list)  # vertex ids along each segment
    rings: list[list[int]] = field(default_factory=list)  # incident edge ids, counter-clockwise

    def degree(self, v: int) -> int:
        return len(self.rings[v])

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for e in self.rings[v]:
            a, b, _ = self.edges[e]
            out.add(b if a == v else a)
        return out


def _segments(source) -> list[GeomObject]:
    objs = source.objects if isinstance(source, Instance) else list(source)
    for i, o in enumerate(objs):
        if o.kind is not Kind.SEGMENT:
            raise ValueError(f"object {i} is a {o.kind.value}, expected a segment")
    return objs


def _candidate_pairs(segs: list[GeomObject]):
    """Pairs whose bounding boxes share a cell of a uniform grid.

    Cells are as wide as the median bounding-box extent, so short segments
    are compared only with their neighbours; long ones fall back towards
    all pairs.
    """
    if len(segs) < 64:
        yield from ((i, j) for i in range(len(segs)) for j in range(i + 1, len(segs)))
        return
    boxes = []
    for s in segs:
        a, b = s.endpoints()
        boxes.append((min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y)))
    extents = sorted(max(x1 - x0, y1 - y0) for x0, y0, x1, y1 in boxes)
    cell = extents[len(extents) // 2] or Fraction(1)
    cells: dict[tuple[int, int], list[int]] = {}
    for i, (x0, y0, x1, y1) in enumerate(boxes):
        for cx in range(math.floor(x0 / cell), math.floor(x1 / cell) + 1):
            for cy in range(math.floor(y0 / cell), math.floor(y1 / cell) + 1):
                cells.setdefault((cx, cy), []).append(i)
    seen = set()
    for members in cells.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                seen.add((members[a], members[b]))
    yield from sorted(seen)


def build_arrangement_graph(source) -> ArrangementGraph:
    segs = _segments(source)
    on: list[set[Point]] = [set(s.endpoints()) for s in segs]
    for i, j in _candidate_pairs(segs):
        r = intersect(segs[i], segs[j])
        if r.kind is IntersectionKind.OVERLAP:
            raise OverlapError(i, j)
        if r.kind is IntersectionKind.POINT:
            on[i].add(r.point)
            on[j].add(r.point)
    pts = sorted(set().union(*on)) if on else []
    vid = {p: k for k, p in enumerate(pts)}
    g = ArrangementGraph(pts, [], [], [[] for _ in pts])
    for i, s in enumerate(segs):
        path = [vid[p] for p in sorted(on[i], key=s.param)]
        g.paths.append(path)
        for a, b in zip(path, path[1:]):
            g.rings[a].append(len(g.edges))
            g.rings[b].append(len(g.edges))
            g.edges.append((a, b, i))
    for v, ring in enumerate(g.rings):
        p = pts[v]

        def away(e, p=p, v=v):
            a, b, _ = g.edges[e]
            return pts[b if a == v else a] - p

        ring.sort(key=cmp_to_key(lambda e, f: _angle_cmp(away(e), away(f))))
    return g


def _has_triangle(adj: dict[int, set[int]]) -> bool:
    for u, nu in adj.items():
        for w in nu:
            if w > u and nu & adj[w]:
                return True
    return False


def is_triangle_free(g: ArrangementGraph) -> bool:
    return not _has_triangle({v: g.neighbours(v) for v in range(len(g.points))})


# --------------------------------------------------------------------------
# peeling


class InvariantError(AssertionError):
    pass


@dataclass
class PeelStats:
    ops: int = 0  # structural operations: edge deletions, splices, vertex removals
    peels: int = 0
    max_degree_picked: int = 0
    edges: int = 0


class _Peeler:
    def __init__(self, segs: list[GeomObject], g: ArrangementGraph, debug: bool):
        self.segs, self.g, self.debug = segs, g, debug
        n = len(g.points)
        # per segment, a doubly linked list over its live vertices
        self.nxt: list[dict[int, Optional[int]]] = []
        self.prv: list[dict[int, Optional[int]]] = []
        self.head: list[Optional[int]] = []
        self.tail: list[Optional[int]] = []
        self.at: list[set[int]] = [set() for _ in range(n)]
        self.deg = [0] * n
        for s, path in enumerate(g.paths):
            self.nxt.append({a: b for a, b in zip(path, path[1:] + [None])})
            self.prv.append({b: a for a, b in zip([None] + path[:-1], path)})
            self.head.append(path[0])
            self.tail.append(path[-1])
            for k, v in enumerate(path):
                self.at[v].add(s)
                self.deg[v] += (k > 0) + (k < len(path) - 1)
        self.alive_seg = [True] * len(segs)
        self.alive_v = [True] * n
        self.heap = [(self.deg[v], v) for v in range(n)]
        heapq.heapify(self.heap)
        self.hits = HittingSet(solver="trifree")
        self.stats = PeelStats(edges=len(g.edges))
        self.removed: list[int] = []

    def _touch(self, v: int) -> None:
        heapq.heappush(self.heap, (self.deg[v], v))

    def _drop_segment(self, s: int) -> None:
        self.alive_seg[s] = False
        self.removed.append(s)
        v = self.head[s]
        while v is not None:
            w = self.nxt[s][v]
            self.at[v].discard(s)
            if w is not None:
                self.deg[v] -= 1
                self.deg[w] -= 1
                self.stats.ops += 1
                self._touch(w)
            self._touch(v)
            v = w

    def _hit(self, u: int) -> None:
        self.hits.add(self.g.points[u])
        for s in sorted(self.at[u]):
            self._drop_segment(s)

    def _remove_vertex(self, v: int) -> list[int]:
        """Detach ``v`` from every live segment; return vertices left as single-point segments."""
        shrunk = []
        for s in sorted(self.at[v]):
            p, n = self.prv[s][v], self.nxt[s][v]
            self.stats.ops += 1
            if p is not None and n is not None:
                # passing through: splice the two edges into one
                self.nxt[s][p], self.prv[s][n] = n, p
                self.deg[v] -= 2
            else:
                other = n if p is None else p
                if other is None:
                    continue
                if p is None:
                    self.head[s], self.prv[s][n] = n, None
                else:
                    self.tail[s], self.nxt[s][p] = p, None
                self.deg[v] -= 1
                self.deg[other] -= 1
                self._touch(other)
                if self.head[s] == self.tail[s]:
                    shrunk.append(s)
            del self.nxt[s][v], self.prv[s][v]
        self.at[v].clear()
        self.alive_v[v] = False
        return shrunk

    def run(self) -> HittingSet:
        while self.heap:
            d, v = heapq.heappop(self.heap)
            if not self.alive_v[v] or d != self.deg[v]:
                continue
            if d == 0 and not self.at[v]:
                self.alive_v[v] = False
                self.stats.ops += 1
                continue
            if d > 3:
                raise InvariantError(f"no vertex of degree at most 3 (smallest is {d})")
            self.stats.peels += 1
            self.stats.max_degree_picked = max(self.stats.max_degree_picked, d)
            for s in self._remove_vertex(v):
                if self.alive_seg[s]:
                    self._hit(self.head[s])
            if self.debug:
                self.check()
        if any(self.alive_seg):
            raise InvariantError("segments left after the graph emptied")
        return self.hits

    # -- debug-mode invariants ------------------------------------------------

    def live_path(self, s: int) -> list[int]:
        out, v = [], self.head[s]
        while v is not None:
            out.append(v)
            v = self.nxt[s][v]
        return out

    def check(self) -> None:
        pts = self.g.points
        adj: dict[int, set[int]] = {}
        for s, seg in enumerate(self.segs):
            if not self.alive_seg[s]:
                # (2) removed segments are hit
                if not any(contains(seg, p) for p in self.hits.points):
                    raise InvariantError(f"segment {s} removed but not hit")
                continue
            path = self.live_path(s)
            if path[-1] != self.tail[s] or len(path) < 2:
                raise InvariantError(f"segment {s} is not one connected piece")
            # (1) one connected piece, ordered along the original segment;
            # (3) it lies inside the original, so hitting it hits the original
            ts = [seg.param(pts[v]) for v in path]
            if ts != sorted(ts) and ts != sorted(ts, reverse=True):
                raise InvariantError(f"segment {s} remainder is out of order")
            if not all(contains(seg, pts[v]) for v in (path[0], path[-1])):
                raise InvariantError(f"segment {s} remainder leaves the original")
            for a, b in zip(path, path[1:]):
                adj.setdefault(a, set()).add(b)
                adj.setdefault(b, set()).add(a)
        for v, nb in adj.items():
            if len(nb) != self.deg[v]:
                raise InvariantError(f"degree bookkeeping off at vertex {v}")
        # (4) the remaining graph has no triangle
        if _has_triangle(adj):
            raise InvariantError("remaining arrangement graph has a triangle")


@dataclass
class TriFreeResult:
    hitting_set: HittingSet
    graph: ArrangementGraph
    stats: PeelStats


def run_triangle_free(source, debug: bool = False, check_input: bool = True) -> TriFreeResult:
    segs = _segments(source)
    g = build_arrangement_graph(segs)
    if check_input and not is_triangle_free(g):
        raise NotTriangleFree("arrangement graph contains a triangle")
    peeler = _Peeler(segs, g, debug)
    hs = peeler.run()
    return TriFreeResult(hs, g, peeler.stats)


def solve_triangle_free(source, debug: bool = False) -> HittingSet:
    return run_triangle_free(source, debug).hitting_set
