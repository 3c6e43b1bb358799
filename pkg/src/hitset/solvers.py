"""Solver registry: applicability checks, auto-detection, and dispatch.

Solvers written for horizontal and vertical objects also accept any input
with two orientation classes; the input is mapped onto the axes by a
linear transform, solved there, and the points are mapped back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .geometry import HORIZONTAL, VERTICAL, IDENTITY, AffineTransform, GeomObject, Kind, Orientation, affine_normalize
from .hrvl import solve_hrvl
from .instance import HittingSet, Instance, ObjectUnion
from .lines_greedy import solve_three_slopes_greedy, solve_two_slopes
from .lp import kr_parameters, round_pairs_103approx, round_pairs_4approx, solve_kr_baseline
from .stab1d import stab_objects
from .trifree import OverlapError, build_arrangement_graph, is_triangle_free, solve_triangle_free
from .vlhs import lower_bounds, solve_vlhs, solve_vrays_hs


class NotApplicable(ValueError):
    """The chosen solver does not accept this instance family."""


@dataclass(frozen=True)
class SolverInfo:
    name: str
    guarantee: str  # human-readable factor, e.g. "exact" or "7/5"
    factor: Optional[Fraction]  # bound on size/OPT; None when the bound is in terms of LP* or k*r
    lp_factor: Optional[Fraction] = None  # bound on size/LP*


# --------------------------------------------------------------------------
# mapping two orientation classes onto the axes


def _to_axes(objects: list[GeomObject], horiz: Optional[Orientation], vert: Optional[Orientation]):
    """Transform sending class ``horiz`` to horizontal and ``vert`` to vertical."""
    if horiz is None and vert is None:
        return objects, IDENTITY
    if horiz is not None and vert is not None and {o.orientation for o in objects} == {horiz, vert}:
        return affine_normalize(objects, order=(horiz, vert))
    # one class missing: complete it with an axis that is not parallel
    if horiz is None:
        horiz = HORIZONTAL if vert != HORIZONTAL else VERTICAL
    if vert is None:
        vert = VERTICAL if horiz != VERTICAL else HORIZONTAL
    u, v = horiz.vector, vert.vector
    fwd = AffineTransform(u.x, v.x, u.y, v.y).inverse()
    return [fwd.apply_object(o) for o in objects], fwd


def _map_back(hs: HittingSet, fwd: AffineTransform) -> HittingSet:
    if fwd.is_identity:
        return hs
    inv = fwd.inverse()
    return HittingSet([inv.apply(p) for p in hs.points], list(hs.tags), hs.solver)


def _classes(objs, kind: Kind) -> set[Orientation]:
    return {o.orientation for o in objs if o.kind is kind}


def _one(s: set) -> Optional[Orientation]:
    return next(iter(s)) if s else None


# --------------------------------------------------------------------------
# applicability: None when the solver applies, else the reason it does not


def _need_plain(inst: Instance) -> Optional[str]:
    return None if inst.plain else "instance has unions of several objects"


def _check_stab1d(inst):
    if r := _need_plain(inst):
        return r
    if len(inst.orientations()) > 1:
        return f"needs one orientation, found {len(inst.orientations())}"
    return None


def _check_lines(limit):
    def check(inst):
        if r := _need_plain(inst):
            return r
        if any(o.kind is not Kind.LINE for o in inst.objects):
            return "needs lines only"
        if len(inst.orientations()) > limit:
            return f"needs at most {limit} orientations, found {len(inst.orientations())}"
        return None

    return check


def _line_and_other(inst, first: Kind, other: Kind) -> Optional[str]:
    """One orientation class of ``first`` plus one different class of ``other``."""
    if r := _need_plain(inst):
        return r
    objs = inst.objects
    if not {o.kind for o in objs} <= {first, other}:
        return f"needs {first.value}s and {other.value}s only"
    a, b = _classes(objs, first), _classes(objs, other)
    if len(a) > 1 or len(b) > 1:
        return f"needs one orientation class per kind, found {len(a)} and {len(b)}"
    if a and a == b:
        return f"{first.value}s and {other.value}s must not be parallel"
    return None


def _check_hrvl(inst):
    return _line_and_other(inst, Kind.LINE, Kind.RAY)


def _check_vlhs(inst):
    return _line_and_other(inst, Kind.LINE, Kind.SEGMENT)


def _check_vrays(inst):
    if r := _line_and_other(inst, Kind.RAY, Kind.SEGMENT):
        return r
    rays = [o for o in inst.objects if o.kind is Kind.RAY]
    if not rays:
        return "needs at least one ray"
    # every direction is a multiple of its class vector; the signs must agree
    signs = {o.orientation.position(o.direction) > 0 for o in rays}
    return None if len(signs) == 1 else "rays point both ways"


def _check_trifree(inst):
    if r := _need_plain(inst):
        return r
    if any(o.kind is not Kind.SEGMENT for o in inst.objects):
        return "needs segments only"
    try:
        g = build_arrangement_graph(inst.objects)
    except OverlapError as e:
        return str(e)
    return None if is_triangle_free(g) else "arrangement graph contains a triangle"


def _check_pairs(second_kind: Kind):
    def check(inst):
        if len(inst) == 0:
            return "empty instance"
        firsts, seconds = set(), set()
        for j, u in enumerate(inst.unions):
            ms = u.members
            if len(ms) != 2:
                return f"union {j} has {len(ms)} members, expected 2"
            segs = [m for m in ms if m.kind is Kind.SEGMENT]
            others = [m for m in ms if m.kind is second_kind]
            if second_kind is Kind.SEGMENT:
                if len(segs) != 2 or segs[0].orientation == segs[1].orientation:
                    return f"union {j} is not two crossing-direction segments"
                firsts.add(segs[0].orientation)
                firsts.add(segs[1].orientation)
            else:
                if len(segs) != 1 or len(others) != 1:
                    return f"union {j} is not a segment plus a {second_kind.value}"
                firsts.add(segs[0].orientation)
                seconds.add(others[0].orientation)
        if second_kind is Kind.SEGMENT:
            return None if len(firsts) == 2 else f"needs 2 orientation classes, found {len(firsts)}"
        if len(firsts) != 1 or len(seconds) != 1 or firsts == seconds:
            return "needs one segment class and one different line class"
        return None

    return check


# --------------------------------------------------------------------------
# runners


def _run_stab1d(inst):
    hs = HittingSet(solver="stab1d")
    for p in stab_objects(inst.objects):
        hs.add(p)
    return hs


def _run_hrvl(inst):
    objs = inst.objects
    objs2, fwd = _to_axes(objs, _one(_classes(objs, Kind.RAY)), _one(_classes(objs, Kind.LINE)))
    return _map_back(solve_hrvl(objs2, [u.label for u in inst.unions]), fwd)


def _run_vlhs(inst):
    objs = inst.objects
    objs2, fwd = _to_axes(objs, _one(_classes(objs, Kind.SEGMENT)), _one(_classes(objs, Kind.LINE)))
    return _map_back(solve_vlhs(objs2), fwd)


def _run_vrays(inst):
    objs = inst.objects
    objs2, fwd = _to_axes(objs, _one(_classes(objs, Kind.SEGMENT)), _one(_classes(objs, Kind.RAY)))
    if any(o.kind is Kind.RAY and o.direction.y > 0 for o in objs2):
        # reflect so that the rays point down
        flip = AffineTransform(Fraction(1), Fraction(0), Fraction(0), Fraction(-1))
        objs2 = [flip.apply_object(o) for o in objs2]
        fwd = AffineTransform(fwd.a, fwd.b, -fwd.c, -fwd.d)
    return _map_back(solve_vrays_hs(objs2), fwd)


def _pairs_frame(inst, second_kind: Kind):
    objs = inst.objects
    if second_kind is Kind.SEGMENT:
        classes = sorted({o.orientation for o in objs})
        horiz = HORIZONTAL if HORIZONTAL in classes else classes[0]
        vert = next(c for c in classes if c != horiz)
    else:
        horiz, vert = _one(_classes(objs, Kind.SEGMENT)), _one(_classes(objs, Kind.LINE))
    _, fwd = _to_axes(objs, horiz, vert)
    if fwd.is_identity:
        return inst, fwd
    unions = tuple(ObjectUnion(tuple(fwd.apply_object(m) for m in u.members), u.label) for u in inst.unions)
    return Instance(unions, inst.name, inst.generator, inst.seed), fwd


def _run_pairs4(inst):
    inst2, fwd = _pairs_frame(inst, Kind.SEGMENT)
    return _map_back(round_pairs_4approx(inst2), fwd)


def _run_pairs103(inst):
    inst2, fwd = _pairs_frame(inst, Kind.LINE)
    return _map_back(round_pairs_103approx(inst2), fwd)


def _check_kr(inst):
    return None


def _run_kr(inst):
    return solve_kr_baseline(inst)


def _run_trifree(inst):
    return solve_triangle_free(inst.objects)


@dataclass(frozen=True)
class _Entry:
    info: SolverInfo
    check: Callable[[Instance], Optional[str]]
    run: Callable[[Instance], HittingSet]


F = Fraction
_REGISTRY: dict[str, _Entry] = {
    "stab1d": _Entry(SolverInfo("stab1d", "exact", F(1)), _check_stab1d, _run_stab1d),
    "two-slope": _Entry(SolverInfo("two-slope", "exact", F(1)), _check_lines(2), lambda i: solve_two_slopes(i.objects)),
    "three-slope-greedy": _Entry(
        SolverInfo("three-slope-greedy", "7/5", F(7, 5)), _check_lines(3), lambda i: solve_three_slopes_greedy(i.objects)
    ),
    "hrvl": _Entry(SolverInfo("hrvl", "exact", F(1)), _check_hrvl, _run_hrvl),
    "vlhs53": _Entry(SolverInfo("vlhs53", "5/3", F(5, 3)), _check_vlhs, _run_vlhs),
    "vrays53": _Entry(SolverInfo("vrays53", "5/3", F(5, 3)), _check_vrays, _run_vrays),
    "trifree": _Entry(SolverInfo("trifree", "3", F(3)), _check_trifree, _run_trifree),
    "pairs4": _Entry(SolverInfo("pairs4", "4 LP*", None, F(4)), _check_pairs(Kind.SEGMENT), _run_pairs4),
    "pairs103": _Entry(SolverInfo("pairs103", "10/3 LP*", None, F(10, 3)), _check_pairs(Kind.LINE), _run_pairs103),
    "kr": _Entry(SolverInfo("kr", "k*r", None), _check_kr, _run_kr),
}

# most specific first; auto-detect takes the first that applies
SOLVER_NAMES = tuple(_REGISTRY)


def solver_info(name: str) -> SolverInfo:
    if name not in _REGISTRY:
        raise KeyError(f"unknown solver {name!r}")
    return _REGISTRY[name].info


def why_not(name: str, inst: Instance) -> Optional[str]:
    """Reason ``name`` cannot run on ``inst``, or None if it can."""
    if name not in _REGISTRY:
        return f"unknown solver {name!r}"
    return _REGISTRY[name].check(inst)


def applicable(inst: Instance) -> list[str]:
    return [n for n in SOLVER_NAMES if _REGISTRY[n].check(inst) is None]


def auto_detect(inst: Instance) -> str:
    return applicable(inst)[0]  # kr always applies


def kr_bound(inst: Instance) -> int:
    k, r = kr_parameters(inst)
    return k * r


def run_solver(name: str, inst: Instance) -> HittingSet:
    if name == "auto":
        name = auto_detect(inst)
    reason = why_not(name, inst)
    if reason is not None:
        raise NotApplicable(f"{name}: {reason}")
    hs = _REGISTRY[name].run(inst)
    hs.solver = name
    return hs


def vh_bounds(name: str, inst: Instance) -> tuple[int, int]:
    """``(v, h)`` lower bounds for vlhs53 / vrays53, in the solver's own frame."""
    objs = inst.objects
    rays = name == "vrays53"
    vert = _one(_classes(objs, Kind.RAY if rays else Kind.LINE))
    objs2, _ = _to_axes(objs, _one(_classes(objs, Kind.SEGMENT)), vert)
    if rays and any(o.kind is Kind.RAY and o.direction.y > 0 for o in objs2):
        flip = AffineTransform(Fraction(1), Fraction(0), Fraction(0), Fraction(-1))
        objs2 = [flip.apply_object(o) for o in objs2]
    return lower_bounds(objs2, rays=rays)
