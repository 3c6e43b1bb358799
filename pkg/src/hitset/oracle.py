"""Ground truth: exact minimum hitting set, feasibility certificates, SAT."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .geometry import Point, contains
from .instance import CandidateSet, Instance, candidate_points, coverage


class SizeGuardError(RuntimeError):
    """The instance is too large for exhaustive search under the current guard."""


@dataclass
class OracleResult:
    optimum: int
    points: list[Point]
    nodes: int
    seconds: float


DEFAULT_MAX_UNIONS = 24
DEFAULT_MAX_CANDIDATES = 40


def _reduce_dominated(masks: list[int], universe: int) -> list[int]:
    """Indices of candidates whose (restricted) coverage is not strictly dominated.

    Among equal coverages the lowest index is kept.
    """
    restricted = [(m & universe, i) for i, m in enumerate(masks)]
    restricted = [(m, i) for m, i in restricted if m]
    # larger coverage first so dominators are seen before the dominated
    restricted.sort(key=lambda t: (-bin(t[0]).count("1"), t[1]))
    kept: list[tuple[int, int]] = []
    for m, i in restricted:
        if any(m & k == m for k, _ in kept):
            continue
        kept.append((m, i))
    return sorted(i for _, i in kept)


class _Search:
    def __init__(self, masks: list[int], n: int, prune: bool, node_limit: Optional[int]):
        self.masks = masks
        self.n = n
        self.prune = prune
        self.node_limit = node_limit
        self.nodes = 0
        self.full = (1 << n) - 1
        # union -> candidates covering it
        self.covering = [[c for c, m in enumerate(masks) if m >> u & 1] for u in range(n)]
        # union -> unions that share some candidate with it (itself included)
        self.conflict = [0] * n
        for m in masks:
            for u in _bits(m):
                self.conflict[u] |= m
        self.best = n + 1
        self.best_set: list[int] = []
        self.seen: dict[int, tuple[Optional[list[int]], int]] = {}

    def lower_bound(self, uncovered: int) -> int:
        # greedy packing of unions no single candidate can hit together
        lb = 0
        blocked = 0
        rest = uncovered
        for u in sorted(_bits(rest), key=lambda u: len(self.covering[u])):
            if blocked >> u & 1:
                continue
            lb += 1
            blocked |= self.conflict[u]
        return lb

    def run(self, uncovered: int, depth: int) -> Optional[list[int]]:
        """Smallest completion of ``uncovered`` beating the incumbent, if any.

        The memo holds, per uncovered set, either the exact minimum
        completion or a budget below which none exists.
        """
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SizeGuardError(f"search exceeded {self.node_limit} nodes")
        if uncovered == 0:
            self._record(depth, [])
            return []
        budget = self.best - depth
        memo = self.seen.get(uncovered)
        if memo is not None:
            exact, value = memo
            if exact is not None:
                if len(exact) < budget:
                    self._record(depth, exact)
                    return exact
                return None
            if value >= budget:
                return None
        if self.lower_bound(uncovered) >= budget:
            return None
        # fail-first: the uncovered union with the fewest candidates
        u = min(_bits(uncovered), key=lambda u: (len(self.covering[u]), u))
        options = self.covering[u]
        if self.prune:
            sub = [self.masks[c] for c in options]
            options = [options[i] for i in _reduce_dominated(sub, uncovered)]
        options = sorted(options, key=lambda c: (-bin(self.masks[c] & uncovered).count("1"), c))
        found: Optional[list[int]] = None
        for c in options:
            rest = self.run(uncovered & ~self.masks[c], depth + 1)
            if rest is not None:
                # later siblings only return completions that are smaller still
                found = [c] + rest
        self.seen[uncovered] = (found, budget) if found is not None else (None, budget)
        return found

    def _record(self, depth: int, completion: list[int]) -> None:
        self.best = min(self.best, depth + len(completion))


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def exact_min_hitting_set(
    inst: Instance,
    candidates: Optional[CandidateSet | Sequence[Point]] = None,
    *,
    max_unions: Optional[int] = DEFAULT_MAX_UNIONS,
    max_candidates: Optional[int] = DEFAULT_MAX_CANDIDATES,
    prune: bool = True,
    node_limit: Optional[int] = None,
) -> OracleResult:
    """Minimum hitting set over ``candidates`` by branch and bound.

    Refuses (``SizeGuardError``) when the instance exceeds both size guards;
    pass ``None`` to lift a guard.
    """
    t0 = time.perf_counter()
    if candidates is None:
        candidates = candidate_points(inst)
    pts = list(candidates.points if isinstance(candidates, CandidateSet) else candidates)
    n = len(inst.unions)
    too_many_unions = max_unions is not None and n > max_unions
    too_many_cands = max_candidates is not None and len(pts) > max_candidates
    if too_many_unions and too_many_cands:
        raise SizeGuardError(
            f"{n} unions / {len(pts)} candidates exceeds guard ({max_unions} / {max_candidates})"
        )
    masks = coverage(inst, pts)
    full = (1 << n) - 1
    reach = 0
    for m in masks:
        reach |= m
    if reach != full:
        missing = [i for i in range(n) if not reach >> i & 1]
        raise ValueError(f"candidates do not cover unions {missing}")
    if prune and n:
        keep = _reduce_dominated(masks, full)
        pts = [pts[i] for i in keep]
        masks = [masks[i] for i in keep]
    search = _Search(masks, n, prune, node_limit)
    # greedy incumbent
    rest, greedy = full, []
    while rest:
        c = max(range(len(masks)), key=lambda c: (bin(masks[c] & rest).count("1"), -c))
        greedy.append(c)
        rest &= ~masks[c]
    search.best, search.best_set = len(greedy), greedy
    found = search.run(full, 0)
    if found is not None:
        search.best_set = found
    chosen = [pts[c] for c in search.best_set]
    return OracleResult(search.best, chosen, search.nodes, time.perf_counter() - t0)


def optimum(inst: Instance, **kw) -> int:
    return exact_min_hitting_set(inst, **kw).optimum


# --------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    union: int
    point: Optional[Point]
    member: Optional[int]

    @property
    def ok(self) -> bool:
        return self.point is not None


def verify_hitting_set(inst: Instance, points: Sequence[Point]) -> list[Certificate]:
    """One certificate per union: a witnessing (point, member) or a violation."""
    out = []
    for i, u in enumerate(inst.unions):
        cert = Certificate(i, None, None)
        for p in points:
            hit = next((k for k, m in enumerate(u.members) if contains(m, p)), None)
            if hit is not None:
                cert = Certificate(i, p, hit)
                break
        out.append(cert)
    return out


def is_feasible(inst: Instance, points: Sequence[Point]) -> bool:
    return all(c.ok for c in verify_hitting_set(inst, points))


# --------------------------------------------------------------------------
# 3SAT


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF over variables ``1..n``; literal ``-v`` is the negation of ``v``."""

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise ValueError(f"literal {lit} outside variables 1..{self.variable_count}")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def sat_brute_force(f: CnfFormula, max_vars: int = 20) -> bool:
    if f.variable_count > max_vars:
        raise SizeGuardError(f"{f.variable_count} variables exceeds guard {max_vars}")
    return any(f.satisfied_by(a) for a in itertools.product((False, True), repeat=f.variable_count))


def parse_dimacs(text: str) -> CnfFormula:
    """Minimal DIMACS CNF reader (``p cnf n m`` header, 0-terminated clauses)."""
    n = None
    lits: list[int] = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line {s!r}")
            n = int(parts[2])
            continue
        lits.extend(int(t) for t in s.split())
    if n is None:
        raise ValueError("missing 'p cnf' line")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    return CnfFormula(n, tuple(clauses))
