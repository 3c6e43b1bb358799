"""Set-cover LP relaxation over candidate points, and LP-rounding solvers.

The LP has one variable per candidate point and one covering constraint per
union.  A union's constraint counts each point once, even when the point
lies on two of its members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import HORIZONTAL, VERTICAL, GeomObject, Kind, Point, contains, fmt
from .instance import CandidateSet, HittingSet, Instance, candidate_points
from .simplex import Unbounded, maximize
from .stab1d import stab_objects
from .vlhs import run_vlhs

HALF = Fraction(1, 2)


class LPInfeasible(ValueError):
    """Some union has no covering candidate, so no fractional cover exists."""


@dataclass
class LPModel:
    points: list[Point]
    # per union: sorted variable indices covering it (the constraint support)
    constraints: list[tuple[int, ...]]
    # per union, per member: variable indices on that member
    member_sets: list[tuple[tuple[int, ...], ...]] = field(default_factory=list)
    labels: list[Optional[str]] = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.points)

    def dump(self) -> str:
        """Plain-text form for cross-checking with an external solver.

        ``var <i> <x> <y>`` names each variable's point; each
        ``row <j> <i> <i> ...`` reads ``sum of x_i >= 1``.
        """
        out = ["lp-model 1", "minimize sum x"]
        for i, p in enumerate(self.points):
            out.append(f"var {i} {fmt(p.x)} {fmt(p.y)}")
        for j, row in enumerate(self.constraints):
            out.append(f"row {j} " + " ".join(map(str, row)))
        return "\n".join(out) + "\n"


@dataclass
class FractionalSolution:
    values: list[Fraction]
    objective: Fraction
    duals: list[Fraction]  # one per constraint: a packing certifying optimality
    pivots: int = 0

    def mass(self, idx: Sequence[int]) -> Fraction:
        return sum((self.values[i] for i in idx), Fraction(0))


def build_set_cover_lp(inst: Instance, candidates=None) -> LPModel:
    if candidates is None:
        candidates = candidate_points(inst)
    pts = list(candidates.points if isinstance(candidates, CandidateSet) else candidates)
    cons, members = [], []
    for j, u in enumerate(inst.unions):
        per = tuple(tuple(i for i, p in enumerate(pts) if contains(m, p)) for m in u.members)
        row = tuple(sorted(set().union(*per)))
        if not row:
            raise LPInfeasible(f"union {j} has no covering candidate")
        cons.append(row)
        members.append(per)
    return LPModel(pts, cons, members, [u.label for u in inst.unions])


def solve_lp(model: LPModel) -> FractionalSolution:
    """Exact optimum, solved through the packing dual.

    ``max sum y_j  s.t.  sum_{j : i in row j} y_j <= 1`` has the slack basis
    feasible, and its optimal dual is an optimal fractional cover.
    """
    m = len(model.constraints)
    if m == 0:
        return FractionalSolution([Fraction(0)] * model.n_vars, Fraction(0), [], 0)
    A = [[0] * m for _ in range(model.n_vars)]
    for j, row in enumerate(model.constraints):
        if not row:
            raise LPInfeasible(f"constraint {j} is empty")
        for i in row:
            A[i][j] = 1
    try:
        res = maximize([1] * m, A, [1] * model.n_vars)
    except Unbounded as e:
        raise LPInfeasible(str(e)) from None
    return FractionalSolution(res.dual, res.value, res.primal, res.pivots)


def check_optimal(model: LPModel, sol: FractionalSolution) -> bool:
    """Exact certificate: primal and dual feasible with equal objectives."""
    if any(v < 0 for v in sol.values) or any(v < 0 for v in sol.duals):
        return False
    if any(sol.mass(row) < 1 for row in model.constraints):
        return False
    load = [Fraction(0)] * model.n_vars
    for j, row in enumerate(model.constraints):
        for i in row:
            load[i] += sol.duals[j]
    if any(v > 1 for v in load):
        return False
    return sum(sol.values) == sol.objective == sum(sol.duals)


# --------------------------------------------------------------------------
# rounding


@dataclass
class RoundingResult:
    hitting_set: HittingSet
    model: LPModel
    lp: FractionalSolution
    chosen: list[int]  # member index kept for each union
    filtered: Instance
    doubled: list[Fraction] = field(default_factory=list)  # y*_p = min(2 x*_p, 1)
    inner_lp: Optional[FractionalSolution] = None  # LP of the filtered instance (10/3 rounding)

    def doubled_feasible(self) -> bool:
        """y* covers the kept member of every union."""
        return all(
            sum((self.doubled[i] for i in sets[k]), Fraction(0)) >= 1
            for sets, k in zip(self.model.member_sets, self.chosen)
        )


def _is_hseg(o: GeomObject) -> bool:
    return o.kind is Kind.SEGMENT and o.orientation == HORIZONTAL


def _pair_members(inst: Instance, second) -> list[tuple[int, int]]:
    """For each union, (index of horizontal segment, index of the other member)."""
    out = []
    for j, u in enumerate(inst.unions):
        ms = u.members
        if len(ms) != 2:
            raise ValueError(f"union {j} has {len(ms)} members, expected 2")
        if _is_hseg(ms[0]) and second(ms[1]):
            out.append((0, 1))
        elif _is_hseg(ms[1]) and second(ms[0]):
            out.append((1, 0))
        else:
            raise ValueError(f"union {j} is not a horizontal segment plus the expected partner")
    return out


def _filter(inst: Instance, roles, model: LPModel, sol: FractionalSolution) -> list[int]:
    # ties at exactly 1/2 go to the horizontal member
    return [h if sol.mass(model.member_sets[j][h]) >= HALF else v for j, (h, v) in enumerate(roles)]


def _filtered_instance(inst: Instance, chosen: list[int]) -> Instance:
    return Instance.of([u.members[k] for u, k in zip(inst.unions, chosen)], name=inst.name)


def _round(inst: Instance, second, candidates=None):
    roles = _pair_members(inst, second)
    model = build_set_cover_lp(inst, candidates)
    sol = solve_lp(model)
    chosen = _filter(inst, roles, model, sol)
    doubled = [min(2 * v, Fraction(1)) for v in sol.values]
    return model, sol, chosen, doubled


def run_pairs_4approx(inst: Instance, candidates=None) -> RoundingResult:
    model, sol, chosen, doubled = _round(inst, lambda o: o.kind is Kind.SEGMENT and o.orientation == VERTICAL, candidates)
    filtered = _filtered_instance(inst, chosen)
    hs = HittingSet(solver="pairs4")
    # each side is a one-orientation stabbing problem, solved exactly
    for orient in (HORIZONTAL, VERTICAL):
        side = [o for o in filtered.objects if o.orientation == orient]
        for p in stab_objects(side):
            hs.add(p, "h" if orient == HORIZONTAL else "v")
    return RoundingResult(hs.distinct(), model, sol, chosen, filtered, doubled)


def round_pairs_4approx(inst: Instance) -> HittingSet:
    return run_pairs_4approx(inst).hitting_set


def run_pairs_103approx(inst: Instance, candidates=None) -> RoundingResult:
    model, sol, chosen, doubled = _round(inst, lambda o: o.kind is Kind.LINE and o.orientation == VERTICAL, candidates)
    filtered = _filtered_instance(inst, chosen)
    inner = run_vlhs(filtered)
    hs = HittingSet(solver="pairs103")
    hs.extend(inner.hitting_set)
    inner_lp = solve_lp(build_set_cover_lp(filtered)) if len(filtered) else FractionalSolution([], Fraction(0), [])
    return RoundingResult(hs, model, sol, chosen, filtered, doubled, inner_lp)


def round_pairs_103approx(inst: Instance) -> HittingSet:
    return run_pairs_103approx(inst).hitting_set


# --------------------------------------------------------------------------
# the k*r baseline


def kr_parameters(inst: Instance) -> tuple[int, int]:
    """``(k, r)``: largest union size and number of orientations."""
    k = max((len(u.members) for u in inst.unions), default=0)
    return k, len(inst.orientations())


def solve_kr_baseline(inst: Instance, strategy: str = "filter") -> HittingSet:
    """Solve each orientation class exactly and take the union of the points.

    With ``strategy="filter"`` every union keeps the member carrying the most
    fractional LP mass (at least 1/k of it), which gives the k*r bound.
    ``strategy="all"`` keeps every member; that is exact for plain segments
    but has no bound once unions share members.
    """
    if strategy not in ("filter", "all"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "all" or inst.plain:
        keep = inst.objects
    else:
        model = build_set_cover_lp(inst)
        sol = solve_lp(model)
        keep = []
        for u, sets in zip(inst.unions, model.member_sets):
            k = max(range(len(sets)), key=lambda t: (sol.mass(sets[t]), -t))
            keep.append(u.members[k])
    hs = HittingSet(solver="kr")
    orients = sorted({o.orientation for o in keep})
    for orient in orients:
        for p in stab_objects([o for o in keep if o.orientation == orient]):
            hs.add(p)
    return hs.distinct()
