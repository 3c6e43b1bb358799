"""Instances, hitting sets, candidate points and the text file formats."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .geometry import (
    GeomObject,
    IntersectionKind,
    Kind,
    Point,
    contains,
    fmt,
    intersect,
    q,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ObjectUnion:
    """One set to hit: a point hits the union iff it lies on some member."""

    members: tuple[GeomObject, ...]
    label: Optional[str] = None

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty union")

    def hit_by(self, p: Point) -> bool:
        return any(contains(m, p) for m in self.members)


def single(obj: GeomObject, label: Optional[str] = None) -> ObjectUnion:
    return ObjectUnion((obj,), label)


@dataclass(frozen=True)
class Instance:
    unions: tuple[ObjectUnion, ...] = ()
    name: str = ""
    generator: str = ""
    seed: Optional[int] = None

    @classmethod
    def of(cls, objects: Iterable, **meta) -> "Instance":
        """Build from a mix of GeomObjects (wrapped as singletons) and unions."""
        unions = tuple(o if isinstance(o, ObjectUnion) else single(o) for o in objects)
        return cls(unions, **meta)

    def __len__(self) -> int:
        return len(self.unions)

    @property
    def objects(self) -> list[GeomObject]:
        """Members of all unions, flattened."""
        return [m for u in self.unions for m in u.members]

    @property
    def plain(self) -> bool:
        return all(len(u.members) == 1 for u in self.unions)

    def orientations(self):
        return sorted({m.orientation for m in self.objects})

    def kinds(self) -> Counter:
        return Counter(m.kind for m in self.objects)


@dataclass
class HittingSet:
    """Hit points plus optional per-point tags (e.g. ``3hit`` for 3-hitters)."""

    points: list[Point] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)
    solver: str = ""

    def __post_init__(self):
        if not self.tags:
            self.tags = [""] * len(self.points)

    def add(self, p: Point, tag: str = "") -> None:
        self.points.append(p)
        self.tags.append(tag)

    def extend(self, other: "HittingSet") -> None:
        for p, t in zip(other.points, other.tags):
            self.add(p, t)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def distinct(self) -> "HittingSet":
        """Drop repeated points, keeping the first tag."""
        seen, out = set(), HittingSet(solver=self.solver)
        for p, t in zip(self.points, self.tags):
            if p not in seen:
                seen.add(p)
                out.add(p, t)
        return out


# --------------------------------------------------------------------------
# candidate points


@dataclass
class CandidateSet:
    points: list[Point]
    provenance: list[str]

    def __len__(self) -> int:
        return len(self.points)


def _bbox(points: Sequence[Point]):
    xs = [p.x for p in points] or [Fraction(0)]
    ys = [p.y for p in points] or [Fraction(0)]
    return min(xs), min(ys), max(xs), max(ys)


def private_point(obj: GeomObject, avoid: Sequence[Point]) -> Point:
    """A point on ``obj`` that lies outside the bounding box of ``avoid``.

    Used for lines that meet nothing else; for segments and rays the
    midpoint or apex is returned.
    """
    if obj.kind is Kind.SEGMENT:
        return obj.at(Fraction(1, 2))
    if obj.kind is Kind.RAY:
        return obj.anchor
    x0, y0, x1, y1 = _bbox(list(avoid) + [obj.anchor])
    d = obj.direction
    # step along the line until both coordinates clear the box by one unit
    span = (x1 - x0) + (y1 - y0) + 2
    t = span / max(abs(d.x), abs(d.y))
    p = obj.at(t)
    while x0 - 1 <= p.x <= x1 + 1 and y0 - 1 <= p.y <= y1 + 1:
        t *= 2
        p = obj.at(t)
    return p


def candidate_points(inst: Instance) -> CandidateSet:
    """Endpoints, apexes, pairwise crossings, and private points.

    Some optimal hitting set uses only these points: any other point is
    dominated by one of them (it hits a subset of the unions some candidate
    hits).
    """
    objs = inst.objects
    seen: dict[Point, str] = {}
    for o in objs:
        for p in o.endpoints():
            seen.setdefault(p, "endpoint")
    for i in range(len(objs)):
        for j in range(i + 1, len(objs)):
            r = intersect(objs[i], objs[j])
            if r.kind is IntersectionKind.POINT:
                seen.setdefault(r.point, "crossing")
    pts = list(seen)
    for o in objs:
        if not any(contains(o, p) for p in pts):
            p = private_point(o, pts)
            pts.append(p)
            seen[p] = "private"
    pts.sort()
    return CandidateSet(pts, [seen[p] for p in pts])


def coverage(inst: Instance, points: Sequence[Point]) -> list[int]:
    """Bitmask of unions hit, per point."""
    masks = []
    for p in points:
        m = 0
        for i, u in enumerate(inst.unions):
            if u.hit_by(p):
                m |= 1 << i
        masks.append(m)
    return masks


# --------------------------------------------------------------------------
# text formats
#
# Instance file:
#   hitset-instance 1
#   name <text>            (optional)
#   generator <text>       (optional)
#   seed <int>             (optional)
#   union <label|-> <object> [; <object>]*
# object := segment x1 y1 x2 y2 | ray x y dx dy | line x y dx dy
# numbers are integers or p/q.  Blank lines and '#' comments are ignored.


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _fmt_obj(o: GeomObject) -> str:
    a, d = o.anchor, o.direction
    if o.kind is Kind.SEGMENT:
        e = o.end
        return f"segment {fmt(a.x)} {fmt(a.y)} {fmt(e.x)} {fmt(e.y)}"
    return f"{o.kind.value} {fmt(a.x)} {fmt(a.y)} {fmt(d.x)} {fmt(d.y)}"


def serialize(inst: Instance) -> str:
    out = [f"hitset-instance {FORMAT_VERSION}"]
    if inst.name:
        out.append(f"name {inst.name}")
    if inst.generator:
        out.append(f"generator {inst.generator}")
    if inst.seed is not None:
        out.append(f"seed {inst.seed}")
    for u in inst.unions:
        label = u.label if u.label else "-"
        out.append(f"union {label} " + " ; ".join(_fmt_obj(m) for m in u.members))
    return "\n".join(out) + "\n"


_NUM = re.compile(r"^-?\d+(/\d+)?$")


def _num(tok: str, lineno: int, where: str) -> Fraction:
    if not _NUM.match(tok):
        raise ParseError(lineno, f"{where}: bad number {tok!r}")
    v = q(tok)
    return v


def _parse_obj(toks: list[str], lineno: int, where: str) -> GeomObject:
    if not toks:
        raise ParseError(lineno, f"{where}: empty object")
    kind, args = toks[0], toks[1:]
    if kind not in ("segment", "ray", "line"):
        raise ParseError(lineno, f"{where}: unknown kind {kind!r}")
    if len(args) != 4:
        raise ParseError(lineno, f"{where}: {kind} takes 4 numbers, got {len(args)}")
    a, b, c, d = (_num(t, lineno, where) for t in args)
    if kind == "segment":
        if (a, b) == (c, d):
            raise ParseError(lineno, f"{where}: zero-length segment")
        return GeomObject(Kind.SEGMENT, Point(a, b), Point(c - a, d - b))
    if c == 0 and d == 0:
        raise ParseError(lineno, f"{where}: direction (0,0)")
    return GeomObject(Kind(kind), Point(a, b), Point(c, d))


def parse(text: str) -> Instance:
    meta: dict = {}
    unions = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        key, _, rest = s.partition(" ")
        rest = rest.strip()
        if not header:
            if key != "hitset-instance":
                raise ParseError(lineno, "missing 'hitset-instance <version>' header")
            if rest != str(FORMAT_VERSION):
                raise ParseError(lineno, f"unsupported version {rest!r}")
            header = True
        elif key == "name":
            meta["name"] = rest
        elif key == "generator":
            meta["generator"] = rest
        elif key == "seed":
            try:
                meta["seed"] = int(rest)
            except ValueError:
                raise ParseError(lineno, f"seed: bad integer {rest!r}") from None
        elif key == "union":
            label, _, body = rest.partition(" ")
            where = f"object {len(unions)}"
            if not body.strip():
                raise ParseError(lineno, f"{where}: union has no members")
            members = tuple(_parse_obj(part.split(), lineno, where) for part in body.split(";"))
            unions.append(ObjectUnion(members, None if label == "-" else label))
        else:
            raise ParseError(lineno, f"unknown record {key!r}")
    if not header:
        raise ParseError(0, "empty document")
    return Instance(tuple(unions), **meta)


# Solution file:
#   hitset-solution 1
#   solver <name>
#   point x y [tag]


def serialize_solution(hs: HittingSet) -> str:
    out = [f"hitset-solution {FORMAT_VERSION}"]
    if hs.solver:
        out.append(f"solver {hs.solver}")
    for p, t in zip(hs.points, hs.tags):
        out.append(f"point {fmt(p.x)} {fmt(p.y)}" + (f" {t}" if t else ""))
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> HittingSet:
    hs = HittingSet()
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        toks = s.split()
        if not header:
            if toks[:2] != ["hitset-solution", str(FORMAT_VERSION)]:
                raise ParseError(lineno, "missing 'hitset-solution 1' header")
            header = True
        elif toks[0] == "solver":
            hs.solver = " ".join(toks[1:])
        elif toks[0] == "point":
            if len(toks) not in (3, 4):
                raise ParseError(lineno, "point takes x y [tag]")
            hs.add(Point(_num(toks[1], lineno, "point"), _num(toks[2], lineno, "point")),
                   toks[3] if len(toks) == 4 else "")
        else:
            raise ParseError(lineno, f"unknown record {toks[0]!r}")
    if not header:
        raise ParseError(0, "empty document")
    return hs
