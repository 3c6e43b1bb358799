"""Random instance families and the 3SAT reduction.

Every generator is a pure function of its parameters and seed.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import Orientation, line, ray, segment, vline
from .instance import Instance, ObjectUnion
from .oracle import CnfFormula

FAMILIES = (
    "3slope-lines",
    "hrvl",
    "vlhs",
    "vrays",
    "L-pairs",
    "SL-pairs",
    "trifree-segments",
    "trifree-grid",
)

SLOPES = (Orientation(1, 0), Orientation(0, 1), Orientation(1, 1))


class GeneratorError(ValueError):
    pass


def _count(params: dict, key: str, default: int) -> int:
    v = int(params.pop(key, default))
    if v < 0:
        raise GeneratorError(f"{key} must be >= 0, got {v}")
    return v


def gen_random(family: str, seed: int = 0, **params) -> Instance:
    """One random instance of ``family``.

    Unknown families and unknown or negative parameters raise
    ``GeneratorError``.
    """
    if family not in FAMILIES:
        raise GeneratorError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    rng = random.Random(seed)
    build = _BUILDERS[family]
    params = dict(params)
    objs = build(rng, params)
    if params:
        raise GeneratorError(f"unknown parameters for {family}: {', '.join(sorted(params))}")
    return Instance.of(objs, name=f"{family}-{seed}", generator=family, seed=seed)


def _three_slope(rng, p):
    counts = [_count(p, "x", 3), _count(p, "y", 2), _count(p, "z", 2)]
    span = _count(p, "span", 4)
    no_triple = bool(p.pop("no_triple", False))
    if max(counts) > 2 * span + 1:
        raise GeneratorError(f"span {span} too small for {max(counts)} distinct lines per slope")
    for _ in range(1000):
        objs = []
        for o, c in zip(SLOPES, counts):
            for off in rng.sample(range(-span, span + 1), c):
                # the line whose offset (dy*x - dx*y) is ``off``
                x, y = (0, -off) if o == SLOPES[0] else (off, 0)
                objs.append(line(x, y, o.dx, o.dy))
        if not no_triple or not _has_triple(objs):
            return objs
    raise GeneratorError("could not avoid 3-intersections; increase span")


def _has_triple(objs) -> bool:
    from .lines_greedy import three_intersections

    return bool(three_intersections(objs))


def _hrvl(rng, p):
    nl = _count(p, "lines", 3)
    npairs = _count(p, "pairs", 3)
    grid = _count(p, "grid", 20)
    rows = _count(p, "rows", 6)
    lone = float(p.pop("lone", 0.3))
    objs = [vline(rng.randint(0, grid)) for _ in range(nl)]
    for _ in range(npairs):
        y = rng.randint(0, rows)
        lo = rng.randint(0, grid)
        hi = rng.randint(lo, grid)
        u = rng.random()
        if u < 1 - lone:
            objs += [ray(hi, y, -1, 0), ray(lo, y, 1, 0)]
        elif u < 1 - lone / 2:
            objs.append(ray(hi, y, -1, 0))
        else:
            objs.append(ray(lo, y, 1, 0))
    return objs


def _hseg(rng, grid, rows, maxlen):
    y = rng.randint(0, rows)
    a = rng.randint(0, grid)
    return segment(a, y, a + rng.randint(1, maxlen), y)


def _vlhs(rng, p, rays=False):
    n = _count(p, "objects", 8)
    grid = _count(p, "grid", 8)
    rows = _count(p, "rows", 4)
    share = float(p.pop("vertical_share", 0.4))
    objs = []
    for _ in range(n):
        if rng.random() < share:
            x = rng.randint(0, grid)
            objs.append(ray(x, rng.randint(0, rows + 1), 0, -1) if rays else vline(x))
        else:
            objs.append(_hseg(rng, grid, rows, 4))
    return objs


def _l_pairs(rng, p, with_line=False):
    n = _count(p, "pairs", 5)
    grid = _count(p, "grid", 5)
    out = []
    for _ in range(n):
        h = _hseg(rng, grid, grid, 4)
        if with_line:
            v = vline(rng.randint(0, grid + 2))
        else:
            x, a = rng.randint(0, grid), rng.randint(0, grid)
            v = segment(x, a, x, a + rng.randint(1, 4))
        out.append(ObjectUnion((h, v)))
    return out


_TRI_DIRS = ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1))


def _trifree(rng, p):
    n = _count(p, "segments", 6)
    grid = _count(p, "grid", 6)
    from .trifree import OverlapError, build_arrangement_graph, is_triangle_free

    for _ in range(10000):
        objs = []
        for _ in range(n):
            dx, dy = rng.choice(_TRI_DIRS)
            k = rng.randint(1, 4)
            x, y = rng.randint(0, grid), rng.randint(0, grid)
            objs.append(segment(x, y, x + dx * k, y + dy * k))
        try:
            g = build_arrangement_graph(objs)
        except OverlapError:
            continue
        if is_triangle_free(g):
            return objs
    raise GeneratorError("no triangle-free arrangement found; lower the segment count")


def _trifree_grid(rng, p):
    # short horizontal and vertical segments at constant density; collinear
    # ones keep a gap, so there are no overlaps, and three axis-parallel
    # edges never close a triangle
    n = _count(p, "segments", 20)
    length = max(1, _count(p, "length", 4))
    size = max(4, math.isqrt(n * length))
    used: dict[tuple[int, int], list[tuple[int, int]]] = {}
    objs = []
    while len(objs) < n:
        vertical = rng.random() < 0.5
        line_at, start = rng.randrange(size), rng.randrange(size)
        end = start + rng.randint(1, length)
        taken = used.setdefault((vertical, line_at), [])
        if any(a - 1 <= end and start <= b + 1 for a, b in taken):
            continue
        taken.append((start, end))
        objs.append(segment(line_at, start, line_at, end) if vertical else segment(start, line_at, end, line_at))
    return objs


_BUILDERS = {
    "3slope-lines": _three_slope,
    "hrvl": _hrvl,
    "vlhs": _vlhs,
    "vrays": lambda rng, p: _vlhs(rng, p, rays=True),
    "L-pairs": _l_pairs,
    "SL-pairs": lambda rng, p: _l_pairs(rng, p, with_line=True),
    "trifree-segments": _trifree,
    "trifree-grid": _trifree_grid,
}


# --------------------------------------------------------------------------
# 3SAT reduction
#
# Every row is a chain of 2m+2 unit segments s_0 .. s_{2m+1} starting at
# a_0 < a_1 < ...; consecutive segments overlap (a_{k+1} - a_k < 1) and
# s_k, s_{k+2} are disjoint (a_{k+2} - a_k > 1).  Along a row, index 2k
# names the part of s_k covered by no other segment and index 2k+1 the
# overlap of s_k and s_{k+1}.  Pairing (s_1,s_2), (s_3,s_4), ... means
# "true"; (s_0,s_1), (s_2,s_3), ... means "false".  A clause line crosses
# a row at a true-pair overlap (index = 3 mod 4) for a positive literal,
# at a false-pair overlap (1 mod 4) for a negative one, and in a lone part
# (even index) otherwise.  Black lines cross lone parts of s_0 / s_{2m+1}.
#
# Coordinates come from a difference-constraint system solved exactly by
# Bellman-Ford.  Two consecutive clause lines are either less than one unit
# apart ("short") or more than one unit apart ("long"); a row switching
# between true and false pairs advances 2 indices across a short gap and 6
# across a long one, so the gap pattern is searched until all rows fit.

MARGIN = Fraction(1, 32)
_RESIDUES = {"P": (3,), "N": (1,), "A": (0, 2)}


class LayoutError(RuntimeError):
    pass


def _bellman_ford(nv: int, edges) -> Optional[list[Fraction]]:
    dist = [Fraction(0)] * nv
    for _ in range(nv + 1):
        changed = False
        for u, v, c in edges:
            if dist[u] + c < dist[v]:
                dist[v] = dist[u] + c
                changed = True
        if not changed:
            return [x - dist[0] for x in dist]
    return None


def _steps(mode: str, a: int, b: int) -> tuple[int, ...]:
    if mode == "S":
        return (1, 2, 3, 4) if a % 2 and b % 2 else (1, 2, 3)
    return (3, 4, 5, 6)


def _row_indices(pattern: str, modes: Sequence[str], K: int) -> Optional[list[int]]:
    out: list[int] = []
    for j, lit in enumerate(pattern):
        target = 4 * j + 2
        if j == 0:
            cands = [r for r in range(1, 6) if r % 4 in _RESIDUES[lit]]
        else:
            prev = out[-1]
            cands = [
                prev + s
                for s in range(1, 7)
                if (prev + s) % 4 in _RESIDUES[lit] and s in _steps(modes[j - 1], prev, prev + s)
            ]
        cands = [c for c in cands if c < 2 * K - 2]
        if not cands:
            return None
        out.append(min(cands, key=lambda r: (abs(r - target), r)))
    return out


def _system(rows, m: int, n: int, K: int, modes):
    d = MARGIN
    edges = []

    def le(v, u, c):  # x_v - x_u <= c
        edges.append((u, v, c))

    X = lambda j: 1 + j  # noqa: E731
    L = lambda i: 1 + m + i  # noqa: E731
    R = lambda i: 1 + m + n + i  # noqa: E731
    nv = 1 + m + 2 * n
    for j in range(m - 1):
        le(X(j), X(j + 1), -d)
        if modes[j] == "S":
            le(X(j + 1), X(j), 1 - d)
        else:
            le(X(j), X(j + 1), -(1 + d))
    for i in range(n - 1):
        le(L(i), L(i + 1), -d)
        le(R(i), R(i + 1), -d)
    bases = []
    for idx in rows:
        base = nv
        nv += K
        bases.append(base)
        A = lambda k, b=base: b + k  # noqa: E731
        for k in range(K - 1):
            le(A(k + 1), A(k), 1 - d)
            le(A(k), A(k + 1), -d)
        for k in range(K - 2):
            le(A(k), A(k + 2), -(1 + d))
        places = [(L(i), 0) for i in range(n)] + [(R(i), 2 * K - 2) for i in range(n)]
        places += [(X(j), r) for j, r in enumerate(idx)]
        for x, r in places:
            k, odd = divmod(r, 2)
            if odd:  # inside the overlap of s_k and s_{k+1}
                le(A(k + 1), x, -d)
                le(x, A(k), 1 - d)
            else:  # on s_k only
                if k == 0:
                    le(A(0), x, -d)
                else:
                    le(A(k - 1), x, -1 - d)
                if k == K - 1:
                    le(x, A(k), 1 - d)
                else:
                    le(x, A(k + 1), -d)
    return nv, edges, bases


@dataclass
class ReductionLayout:
    clause_x: list[Fraction]
    left_x: list[Fraction]
    right_x: list[Fraction]
    starts: list[list[Fraction]]  # per row, left ends of its segments
    indices: list[list[int]]
    modes: tuple[str, ...]


def layout_rows(patterns: Sequence[str], m: int, n: int, K: int) -> ReductionLayout:
    """Coordinates for rows whose clause crossings follow ``patterns``."""
    gap_orders = sorted(
        itertools.product("SL", repeat=max(m - 1, 0)),
        key=lambda ms: (sum(a == b for a, b in zip(ms, ms[1:])), ms),
    )
    for modes in gap_orders:
        rows = [_row_indices(p, modes, K) for p in patterns]
        if any(r is None for r in rows):
            continue
        nv, edges, bases = _system(rows, m, n, K, modes)
        sol = _bellman_ford(nv, edges)
        if sol is None:
            continue
        shift = -min(sol[1:]) if nv > 1 else Fraction(0)
        val = [v + shift for v in sol]
        return ReductionLayout(
            [val[1 + j] for j in range(m)],
            [val[1 + m + i] for i in range(n)],
            [val[1 + m + n + i] for i in range(n)],
            [[val[b + k] for k in range(K)] for b in bases],
            rows,
            modes,
        )
    raise LayoutError(f"no layout found for {len(patterns)} rows and {m} clauses")


def reduction_counts(f: CnfFormula) -> tuple[int, int]:
    """``(N_H, N)``: horizontal segments, and segments plus black lines."""
    n, m = f.variable_count, len(f.clauses)
    nh = 4 * m * n + 4 * n
    return nh, nh + 2 * n


def gen_3sat_reduction(f: CnfFormula) -> Instance:
    """Unit horizontal segments and vertical lines encoding ``f``.

    Some hitting set has N/2 points iff ``f`` is satisfiable.  A clause
    containing both a variable and its negation is always satisfied; its
    line is placed on top of a left black line, which every N/2 solution
    already hits.
    """
    n, m = f.variable_count, len(f.clauses)
    K = 2 * m + 2
    taut = [any(-lit in c for lit in c) for c in f.clauses]
    live = [j for j in range(m) if not taut[j]]
    patterns = []
    for v in range(1, n + 1):
        pat = ""
        for j in live:
            c = f.clauses[j]
            pat += "P" if v in c else ("N" if -v in c else "A")
        patterns.append(pat)
    patterns += ["A" * len(live)] * n
    lay = layout_rows(patterns, len(live), n, K)
    objs: list = []
    labels: list[str] = []
    for r, starts in enumerate(lay.starts):
        y = 2 * n - 1 - r
        name = f"x{r + 1}" if r < n else f"b{r - n + 1}"
        for k, a in enumerate(starts):
            objs.append(segment(a, y, a + 1, y))
            labels.append(f"{name}.s{k}")
    for i, x in enumerate(lay.left_x):
        objs.append(vline(x))
        labels.append(f"L{i + 1}")
    for i, x in enumerate(lay.right_x):
        objs.append(vline(x))
        labels.append(f"R{i + 1}")
    xs = dict(zip(live, lay.clause_x))
    for j in range(m):
        objs.append(vline(xs[j] if j in xs else lay.left_x[0]))
        labels.append(f"c{j + 1}")
    inst = Instance(
        tuple(ObjectUnion((o,), lab) for o, lab in zip(objs, labels)),
        name=f"3sat-n{n}-m{m}",
        generator="sat3",
    )
    check_reduction(inst, n, m)
    return inst


def check_reduction(inst: Instance, n: int, m: int) -> None:
    """Assert the incidence rules the counting argument relies on.

    No point lies on three horizontal segments, and no point of a black
    line lies on two.
    """
    segs = [o for o in inst.objects if o.kind.value == "segment"]
    nh = 4 * m * n + 4 * n
    if len(segs) != nh:
        raise LayoutError(f"expected {nh} horizontal segments, got {len(segs)}")
    rows: dict[Fraction, list[tuple[Fraction, Fraction]]] = {}
    for s in segs:
        rows.setdefault(s.anchor.y, []).append((s.anchor.x, s.end.x))
    for y, ivs in rows.items():
        events = sorted([(lo, 0) for lo, _ in ivs] + [(hi, 1) for _, hi in ivs])
        depth = 0
        for _, kind in events:
            depth += 1 if kind == 0 else -1
            if depth > 2:
                raise LayoutError(f"a point of row {y} lies on three segments")
    black = [u.members[0].anchor.x for u in inst.unions if u.label and u.label[0] in "LR"]
    for x in black:
        for y, ivs in rows.items():
            if sum(lo <= x <= hi for lo, hi in ivs) > 1:
                raise LayoutError(f"black line x={x} meets two segments on row {y}")
