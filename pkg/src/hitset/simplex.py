"""Exact rational simplex (dense tableau, Bland's rule).

Solves ``max c.y  s.t.  A y <= b, y >= 0`` with ``b >= 0``, so the slack
basis is feasible from the start and no phase 1 is needed.  The set-cover
LP is the dual of exactly this shape, and its optimum is read off the
final objective row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(ArithmeticError):
    """The maximization is unbounded (its dual is infeasible)."""


@dataclass
class SimplexResult:
    value: Fraction
    primal: list[Fraction]  # y, one per column
    dual: list[Fraction]  # one per row; optimal for min b.x s.t. A^T x >= c, x >= 0
    pivots: int


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> SimplexResult:
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be non-negative")
    # row i: [A_i | e_i | b_i]
    T = [[Fraction(v) for v in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    for row in T:
        if len(row) != n + m + 1:
            raise ValueError("ragged constraint matrix")
    reduced = c + [Fraction(0)] * m
    basis = [n + i for i in range(m)]
    value = Fraction(0)
    pivots = 0
    while True:
        enter = next((j for j, r in enumerate(reduced) if r > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise Unbounded(f"column {enter} is unbounded")
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            f = T[i][enter]
            if i != leave and f:
                Ti, Tl = T[i], T[leave]
                T[i] = [x - f * y for x, y in zip(Ti, Tl)]
        f = reduced[enter]
        reduced = [r - f * t for r, t in zip(reduced, T[leave][:-1])]
        value += f * T[leave][-1]
        basis[leave] = enter
        pivots += 1
    primal = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            primal[j] = T[i][-1]
    dual = [-reduced[n + i] for i in range(m)]
    return SimplexResult(value, primal, dual, pivots)
