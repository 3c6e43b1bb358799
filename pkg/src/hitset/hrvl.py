"""Exact solver for vertical lines and horizontal rays.

Rays on a common row are reduced to at most one left-pointing ray (l-ray)
and one right-pointing ray (r-ray); every ray is then paired so that each
row carries one pair whose overlap, the *core* segment, is where a single
point hits both rays.  A bidirectional sweep selects a maximum set of
3-hitters (a vertical line meeting a core), balancing the discarded lines
between the two sides, and a minimum edge cover finishes the rest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import HORIZONTAL, VERTICAL, GeomObject, Kind, Point, fmt, ray
from .instance import HittingSet, Instance
from .matching import BipartiteGraph, matching_size, max_matching, min_edge_cover

LEFT_TO_RIGHT, RIGHT_TO_LEFT = 0, 1
_ARROW = {LEFT_TO_RIGHT: "L>R", RIGHT_TO_LEFT: "R>L"}


@dataclass
class VLine:
    x: Fraction
    label: str
    order: int


@dataclass
class RayPair:
    l_ray: GeomObject
    r_ray: GeomObject
    y: Fraction  # working row (after any shift)
    source_y: Fraction  # row of the input rays; output points are mapped here
    label: str
    order: int
    l_fake: bool = False
    r_fake: bool = False

    @property
    def lo(self) -> Fraction:
        return self.r_ray.anchor.x

    @property
    def hi(self) -> Fraction:
        return self.l_ray.anchor.x

    @property
    def core(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    def crosses(self, ln: VLine) -> bool:
        return self.lo <= ln.x <= self.hi


def _stem(label: Optional[str]) -> Optional[str]:
    if not label:
        return None
    for suf in (".l", ".r", "<", ">"):
        if label.endswith(suf):
            return label[: -len(suf)]
    return label


def _check_objects(objects: Sequence[GeomObject]) -> None:
    for o in objects:
        if o.kind is Kind.LINE and o.orientation == VERTICAL:
            continue
        if o.kind is Kind.RAY and o.orientation == HORIZONTAL:
            continue
        raise ValueError(f"HRVL input must be vertical lines and horizontal rays, got {o!r}")


def normalize_rays(objects: Sequence[GeomObject], labels: Optional[Sequence[Optional[str]]] = None):
    """Pair every ray; returns ``(pairs, lines)`` sorted by row and by x."""
    objects = list(objects)
    _check_objects(objects)
    labels = list(labels) if labels is not None else [None] * len(objects)
    lines: dict[Fraction, VLine] = {}
    lefts: dict[Fraction, tuple[int, GeomObject]] = {}
    rights: dict[Fraction, tuple[int, GeomObject]] = {}
    for i, o in enumerate(objects):
        if o.kind is Kind.LINE:
            x = o.anchor.x
            if x not in lines:
                lines[x] = VLine(x, labels[i] or f"x={fmt(x)}", i)
            continue
        y, ax = o.anchor.y, o.anchor.x
        if o.direction.x < 0:
            # nested l-rays: the one with the left-most apex is inside the rest
            if y not in lefts or ax < lefts[y][1].anchor.x:
                lefts[y] = (i, o)
        else:
            if y not in rights or ax > rights[y][1].anchor.x:
                rights[y] = (i, o)
    line_xs = sorted(lines)
    right_of_all = lambda x: max(line_xs + [x]) + 1  # noqa: E731
    left_of_all = lambda x: min(line_xs + [x]) - 1  # noqa: E731

    used_rows = sorted(set(lefts) | set(rights))
    taken = set(used_rows)

    def fresh_row(y: Fraction) -> Fraction:
        above = [r for r in taken if r > y]
        ny = (y + min(above)) / 2 if above else y + 1
        while ny in taken:
            ny = (y + ny) / 2
        taken.add(ny)
        return ny

    pairs: list[RayPair] = []

    def lone_r(i, r, y, src):
        lab = _stem(labels[i]) or f"r@{fmt(src)}"
        partner = ray(right_of_all(r.anchor.x), y, -1, 0)
        shifted = GeomObject(Kind.RAY, Point(r.anchor.x, y), r.direction)
        pairs.append(RayPair(partner, shifted, y, src, lab, i, l_fake=True))

    def lone_l(i, l, y, src):
        lab = _stem(labels[i]) or f"l@{fmt(src)}"
        partner = ray(left_of_all(l.anchor.x), y, 1, 0)
        shifted = GeomObject(Kind.RAY, Point(l.anchor.x, y), l.direction)
        pairs.append(RayPair(shifted, partner, y, src, lab, i, r_fake=True))

    for y in used_rows:
        lft, rgt = lefts.get(y), rights.get(y)
        if lft and rgt:
            (i, l), (j, r) = lft, rgt
            if l.anchor.x >= r.anchor.x:
                sl, sr = _stem(labels[i]), _stem(labels[j])
                lab = sl if sl and sl == sr else "|".join(s for s in (sl, sr) if s) or f"row {fmt(y)}"
                pairs.append(RayPair(l, r, y, y, lab, min(i, j)))
            else:
                # disjoint: no point hits both, so move the r-ray to its own row
                lone_l(i, l, y, y)
                lone_r(j, r, fresh_row(y), y)
        elif lft:
            lone_l(*lft, y, y)
        else:
            lone_r(*rgt, y, y)
    pairs.sort(key=lambda p: (p.y, p.order))
    return pairs, [lines[x] for x in line_xs]


def normalized_instance(pairs: Sequence[RayPair], lines: Sequence[VLine]) -> Instance:
    """The paired instance as plain objects (for checking against the oracle)."""
    from .geometry import vline

    objs = [vline(ln.x) for ln in lines]
    for p in pairs:
        objs += [p.l_ray, p.r_ray]
    return Instance.of(objs, name="hrvl-normalized")


def lines_segments_graph(lines: Sequence[VLine], pairs: Sequence[RayPair]) -> BipartiteGraph:
    edges = [(li, pi) for li, ln in enumerate(lines) for pi, p in enumerate(pairs) if p.crosses(ln)]
    return BipartiteGraph(list(range(len(lines))), list(range(len(pairs))), edges)


def is_critical(line_id, g: BipartiteGraph) -> bool:
    """Removing the line shrinks the maximum matching."""
    if line_id not in g.left:
        raise KeyError(f"unknown line {line_id!r}")
    return matching_size(g) > matching_size(g.without_left(line_id))


@dataclass
class HrvlResult:
    hitting_set: HittingSet
    pairs: list[RayPair]
    lines: list[VLine]
    three_hitters: list[tuple[int, int]]  # (line index, pair index)
    double_hits: list[tuple[int, int, int]]  # (pair, l-hitter line, r-hitter line)
    l_hitters: list[int]
    r_hitters: list[int]
    residual_lines: list[int]
    residual_pairs: list[int]
    bench_counts: list[int]
    trace: list[str] = field(default_factory=list)

    def trace_text(self) -> str:
        return "\n".join(self.trace) + "\n"


def run_hrvl(objects: Sequence[GeomObject], labels: Optional[Sequence[Optional[str]]] = None) -> HrvlResult:
    pairs, lines = normalize_rays(objects, labels)
    trace: list[str] = []
    act_l = set(range(len(lines)))
    act_s = set(range(len(pairs)))
    bench_l: list[int] = []
    bench_s: list[int] = []
    i3: list[tuple[int, int]] = []
    H = [0, 0]
    sd = LEFT_TO_RIGHT

    def active_graph():
        ls, ss = sorted(act_l), sorted(act_s)
        edges = [(li, si) for li in ls for si in ss if pairs[si].crosses(lines[li])]
        return BipartiteGraph(ls, ss, edges)

    def crossing_lines(si):
        return [li for li in act_l if pairs[si].crosses(lines[li])]

    def first_event():
        # segments precede lines at equal coordinates; then ascending y, then input order
        evs = []
        for li in act_l:
            ln = lines[li]
            pos = ln.x if sd == LEFT_TO_RIGHT else -ln.x
            evs.append((pos, 1, Fraction(0), ln.order, "line", li))
        for si in act_s:
            p = pairs[si]
            pos = p.lo if sd == LEFT_TO_RIGHT else -p.hi
            evs.append((pos, 0, p.y, p.order, "seg", si))
        return min(evs)

    def bench_line(li, prefix):
        nonlocal sd
        act_l.discard(li)
        bench_l.append(li)
        H[sd] += 1
        sd = 1 - sd
        trace.append(f"{prefix}to L2, H=[{H[0]},{H[1]}], turn {_ARROW[sd]}")

    while any(pairs[si].crosses(lines[li]) for li in act_l for si in act_s):
        ev = first_event()
        head = f"sweep {_ARROW[sd]}  "
        if ev[4] == "line":
            bench_line(ev[5], head + f"line {lines[ev[5]].label}: crosses no segment first, ")
            continue
        e1 = ev[5]
        cands = crossing_lines(e1)
        if not cands:
            act_s.discard(e1)
            bench_s.append(e1)
            trace.append(head + f"segment {pairs[e1].label}: crosses no line, to S2")
            continue
        key = (lambda li: (lines[li].x, lines[li].order)) if sd == LEFT_TO_RIGHT else (
            lambda li: (-lines[li].x, lines[li].order))
        li = min(cands, key=key)
        msg = head + f"segment {pairs[e1].label}: nearest line {lines[li].label}, "
        if is_critical(li, active_graph()):
            crossed = [si for si in act_s if pairs[si].crosses(lines[li])]
            if sd == LEFT_TO_RIGHT:
                e2 = min(crossed, key=lambda s: (pairs[s].hi, pairs[s].y, pairs[s].order))
            else:
                e2 = min(crossed, key=lambda s: (-pairs[s].lo, pairs[s].y, pairs[s].order))
            i3.append((li, e2))
            act_l.discard(li)
            act_s.discard(e2)
            trace.append(msg + f"critical: 3-hitter ({lines[li].label}, {pairs[e2].label})")
        else:
            bench_line(li, msg + "not critical, ")

    rest_l = sorted(act_l, key=lambda li: lines[li].x)
    rest_s = sorted(act_s, key=lambda si: (pairs[si].lo, pairs[si].y))
    trace.append(
        "no 3-intersections left: lines [{}] to L2, segments [{}] to S2".format(
            ", ".join(lines[li].label for li in rest_l), ", ".join(pairs[si].label for si in rest_s)
        )
    )
    res_l = sorted(bench_l + rest_l, key=lambda li: (lines[li].x, lines[li].order))
    res_s = sorted(bench_s + rest_s, key=lambda si: (pairs[si].lo, pairs[si].hi, pairs[si].y, pairs[si].order))
    trace.append(
        "edge cover over lines [{}] and segments [{}]".format(
            ", ".join(lines[li].label for li in res_l), ", ".join(pairs[si].label for si in res_s)
        )
    )

    hs = HittingSet(solver="hrvl")
    for li, si in i3:
        hs.add(Point(lines[li].x, pairs[si].source_y), "3hit")

    doubles, lh, rh, extra = _finish(lines, pairs, res_l, res_s)
    doubles = _rebalance(lines, pairs, doubles)
    for si, a, b in doubles:
        trace.append(f"double-hit {pairs[si].label}: l-hitter {lines[a].label}, r-hitter {lines[b].label}")
        hs.add(Point(lines[a].x, pairs[si].source_y), "lhit")
        hs.add(Point(lines[b].x, pairs[si].source_y), "rhit")
    for desc, p, tag in extra:
        trace.append(desc)
        hs.add(p, tag)
    trace.append(f"total {len(hs)} points ({len(i3)} three-hitters)")
    lh = [a for _, a, _ in doubles] + lh
    rh = [b for _, _, b in doubles] + rh
    return HrvlResult(hs, pairs, lines, i3, doubles, lh, rh, res_l, res_s, H, trace)


def _finish(lines, pairs, res_l, res_s):
    """Edge cover over residual lines and the two rays of each residual pair."""
    verts = [("L", li) for li in res_l]
    for si in res_s:
        verts += [("l", si), ("r", si)]
    edges = []
    for si in res_s:
        p = pairs[si]
        edges.append((("l", si), ("r", si)))
        for li in res_l:
            x = lines[li].x
            if p.lo <= x <= p.hi:
                raise AssertionError("residual line meets a residual core; 3-hitters not maximum")
            if x <= p.hi:
                edges.append((("L", li), ("l", si)))
            if x >= p.lo:
                edges.append((("L", li), ("r", si)))
    cover = min_edge_cover(verts, edges)
    top = max([p.y for p in pairs] + [Fraction(0)]) + 1
    cores = set()
    side_edges: dict[tuple[str, int], list[int]] = {}
    for a, b in cover.edges:
        if a[0] != "L":
            a, b = b, a
        if a[0] == "L":
            side_edges.setdefault(b, []).append(a[1])
        else:
            cores.add(a[1])
    doubles, lh, rh, extra = [], [], [], []
    for si in sorted(cores, key=lambda s: (pairs[s].lo, pairs[s].y)):
        p = pairs[si]
        extra.append((f"core {p.label}", Point(p.lo, p.source_y), "core"))
    for si in res_s:
        p = pairs[si]
        ls, rs = list(side_edges.get(("l", si), [])), list(side_edges.get(("r", si), []))
        if si not in cores and ls and rs:
            doubles.append((si, ls.pop(0), rs.pop(0)))
        for side, group, bucket in (("l", ls, lh), ("r", rs, rh)):
            for li in group:
                bucket.append(li)
                extra.append(
                    (f"{side}-ray of {p.label} hit on {lines[li].label}", Point(lines[li].x, p.source_y), side + "hit")
                )
    for v in cover.isolated:
        li = v[1]
        extra.append((f"lone line {lines[li].label}", Point(lines[li].x, top), "line"))
    doubles.sort(key=lambda t: (pairs[t[0]].lo, pairs[t[0]].y))
    return doubles, lh, rh, extra


def _rebalance(lines, pairs, doubles):
    """Reassign double-hitters so every l-hitter lies left of every r-hitter."""
    used = [a for _, a, _ in doubles] + [b for _, _, b in doubles]
    if len(set(used)) != len(used) or not doubles:
        return doubles
    order = sorted(used, key=lambda li: (lines[li].x, lines[li].order))
    d = len(doubles)
    lefts, rights = order[:d], order[d:]
    segs = [si for si, _, _ in doubles]
    gl = BipartiteGraph(segs, lefts, [(s, l) for s in segs for l in lefts if lines[l].x <= pairs[s].hi])
    gr = BipartiteGraph(segs, rights, [(s, r) for s in segs for r in rights if lines[r].x >= pairs[s].lo])
    ml, mr = max_matching(gl), max_matching(gr)
    if len(ml) != d or len(mr) != d:
        return doubles
    return [(s, ml[s], mr[s]) for s in segs]


def solve_hrvl(objects: Sequence[GeomObject], labels=None) -> HittingSet:
    return run_hrvl(objects, labels).hitting_set


def fig8_instance() -> Instance:
    """Five vertical lines and seven ray pairs reproducing the sweep walkthrough."""
    from .geometry import vline
    from .instance import single

    xs = {"l1": 0, "l2": 4, "l3": 6, "l4": 10, "l5": 12}
    cores = {
        "a": (3, 8),
        "b": (2, 7),
        "c": (3, 5),
        "d": (7, 9),
        "e": (8, 9),
        "f": (9, 13),
        "g": (Fraction(21, 2), 11),
    }
    unions = [single(vline(x), name) for name, x in xs.items()]
    for row, (name, (lo, hi)) in enumerate(cores.items(), 1):
        unions.append(single(ray(hi, row, -1, 0), f"{name}.l"))
        unions.append(single(ray(lo, row, 1, 0), f"{name}.r"))
    return Instance(tuple(unions), name="fig8", generator="manual")
