import itertools
import random
from fractions import Fraction

import pytest

from hitset.generators import gen_random
from hitset.geometry import pt, segment, vline
from hitset.instance import Instance, ObjectUnion
from hitset.lp import (
    LPInfeasible,
    FractionalSolution,
    LPModel,
    _filter,
    build_set_cover_lp,
    check_optimal,
    kr_parameters,
    round_pairs_103approx,
    round_pairs_4approx,
    run_pairs_103approx,
    run_pairs_4approx,
    solve_kr_baseline,
    solve_lp,
)
from hitset.oracle import is_feasible, optimum
from hitset.simplex import Unbounded, maximize


def _opt(inst) -> int:
    return optimum(inst, max_unions=None, max_candidates=None)


def _solve_square(A, b):
    """Exact Gaussian elimination; None when singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def vertex_enumeration(n_vars, rows):
    """min sum x s.t. sum_{i in row} x_i >= 1, x >= 0, by trying every basis."""
    cons = []
    for row in rows:
        cons.append(([int(i in row) for i in range(n_vars)], 1))
    for i in range(n_vars):
        cons.append(([int(k == i) for k in range(n_vars)], 0))
    best = None
    for basis in itertools.combinations(cons, n_vars):
        x = _solve_square([a for a, _ in basis], [b for _, b in basis])
        if x is None or any(v < 0 for v in x):
            continue
        if all(sum(x[i] for i in row) >= 1 for row in rows):
            val = sum(x)
            best = val if best is None else min(best, val)
    return best


class TestSimplex:
    def test_textbook(self):
        # max 3a + 5b, a <= 4, 2b <= 12, 3a + 2b <= 18  -> 36 at (2, 6)
        r = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
        assert r.value == 36 and r.primal == [2, 6]
        assert sum(d * b for d, b in zip(r.dual, [4, 12, 18])) == 36

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            maximize([1, 1], [[1, -1]], [1])

    def test_negative_rhs_rejected(self):
        with pytest.raises(ValueError):
            maximize([1], [[1]], [-1])

    def test_degenerate_terminates(self):
        # a classic cycling example for the largest-coefficient rule
        c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
        A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
        r = maximize(c, A, [0, 0, 1])
        assert r.value == Fraction(1, 20)


class TestModel:
    def test_one_union_three_candidates(self):
        m = LPModel([pt(0, 0), pt(1, 0), pt(2, 0)], [(0, 1, 2)])
        sol = solve_lp(m)
        assert sol.objective == 1 and check_optimal(m, sol)

    def test_empty(self):
        m = build_set_cover_lp(Instance())
        assert m.n_vars == 0 and solve_lp(m).objective == 0

    def test_disjoint_unions(self):
        inst = Instance.of([segment(0, 0, 1, 0), segment(0, 5, 1, 5)])
        assert solve_lp(build_set_cover_lp(inst)).objective == 2

    def test_single_l(self):
        inst = Instance.of([ObjectUnion((segment(0, 0, 2, 0), segment(1, -1, 1, 1)))])
        m = build_set_cover_lp(inst, [pt(1, 0)])
        sol = solve_lp(m)
        assert sol.objective == 1 and sol.values == [1]

    def test_uncovered_union_is_reported(self):
        with pytest.raises(LPInfeasible):
            build_set_cover_lp(Instance.of([segment(0, 0, 1, 0)]), [pt(5, 5)])

    def test_point_on_both_members_counts_once(self):
        # the shared corner is one variable, not two
        inst = Instance.of([ObjectUnion((segment(0, 0, 1, 0), segment(0, 0, 0, 1)))])
        m = build_set_cover_lp(inst)
        corner = m.points.index(pt(0, 0))
        assert m.constraints[0].count(corner) == 1

    def test_dump_lists_vars_and_rows(self):
        m = build_set_cover_lp(Instance.of([segment(0, 0, 1, 0)]))
        text = m.dump()
        assert text.startswith("lp-model 1\n")
        assert text.count("\nvar ") == m.n_vars and text.count("\nrow ") == 1

    def test_objective_matches_vertex_enumeration(self):
        rng = random.Random(1)
        for _ in range(60):
            n = rng.randint(1, 6)
            rows = [tuple(sorted(rng.sample(range(n), rng.randint(1, n)))) for _ in range(rng.randint(1, 5))]
            m = LPModel([pt(i, 0) for i in range(n)], rows)
            sol = solve_lp(m)
            assert check_optimal(m, sol)
            assert sol.objective == vertex_enumeration(n, rows)


class TestRounding:
    def test_single_l_gives_one_point(self):
        inst = Instance.of([ObjectUnion((segment(0, 0, 2, 0), segment(1, -1, 1, 1)))])
        assert len(round_pairs_4approx(inst)) == 1

    def test_disjoint_ls(self):
        inst = Instance.of(
            [ObjectUnion((segment(10 * k, 0, 10 * k + 2, 0), segment(10 * k, 1, 10 * k, 2))) for k in range(4)]
        )
        r = run_pairs_4approx(inst)
        assert r.lp.objective == 4 and len(r.hitting_set) == 4

    def test_half_tie_goes_to_horizontal(self):
        inst = Instance.of([ObjectUnion((segment(5, 5, 5, 6), segment(0, 0, 1, 0)))])
        model = build_set_cover_lp(inst, [pt(5, 5), pt(0, 0)])
        half = Fraction(1, 2)
        for xs, keep in (([half, half], 1), ([half + Fraction(1, 100), half - Fraction(1, 100)], 0)):
            sol = FractionalSolution(xs, sum(xs), [Fraction(0)])
            assert _filter(inst, [(1, 0)], model, sol) == [keep]

    def test_rejects_malformed_unions(self):
        with pytest.raises(ValueError):
            round_pairs_4approx(Instance.of([segment(0, 0, 1, 0)]))
        with pytest.raises(ValueError):
            round_pairs_103approx(Instance.of([ObjectUnion((segment(0, 0, 1, 0), segment(0, 0, 0, 1)))]))

    def test_segment_plus_line(self):
        inst = Instance.of([ObjectUnion((segment(0, 0, 2, 0), vline(1)))])
        assert len(round_pairs_103approx(inst)) == 1
        assert len(round_pairs_103approx(Instance())) == 0

    def test_four_approx_chain(self):
        for seed in range(60):
            inst = gen_random("L-pairs", seed, pairs=random.Random(seed).randint(1, 6))
            r = run_pairs_4approx(inst)
            X = len(r.hitting_set)
            assert is_feasible(inst, r.hitting_set.points)
            assert check_optimal(r.model, r.lp)
            assert r.doubled_feasible()
            assert X <= 2 * sum(r.doubled) <= 4 * r.lp.objective
            assert r.lp.objective <= _opt(inst)

    def test_ten_thirds_chain(self):
        for seed in range(60):
            inst = gen_random("SL-pairs", seed, pairs=random.Random(seed).randint(1, 6))
            r = run_pairs_103approx(inst)
            X = len(r.hitting_set)
            assert is_feasible(inst, r.hitting_set.points)
            assert 3 * X <= 10 * r.lp.objective
            assert 3 * X <= 5 * r.inner_lp.objective
            assert r.inner_lp.objective <= 2 * r.lp.objective


class TestKr:
    def test_single_orientation_is_exact(self):
        objs = [segment(0, 0, 2, 0), segment(1, 0, 3, 0), segment(5, 0, 6, 0)]
        assert len(solve_kr_baseline(Instance.of(objs))) == 2

    def test_empty(self):
        assert len(solve_kr_baseline(Instance())) == 0
        assert kr_parameters(Instance()) == (0, 0)

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            solve_kr_baseline(Instance(), strategy="best")

    def test_ratio_on_pairs(self):
        for seed in range(40):
            inst = gen_random("L-pairs", seed, pairs=5)
            hs = solve_kr_baseline(inst)
            k, r = kr_parameters(inst)
            assert (k, r) == (2, 2)
            assert is_feasible(inst, hs.points)
            assert len(hs) <= k * r * _opt(inst)

    def test_all_members_strategy_can_exceed_kr(self):
        """Stabbing every member has no k*r bound once members are shared."""
        shared = segment(0, 0, 10, 0)
        unions = [ObjectUnion((shared, segment(3 * k, 5, 3 * k, 6))) for k in range(5)]
        inst = Instance.of(unions)
        assert _opt(inst) == 1
        assert len(solve_kr_baseline(inst, strategy="all")) > 4
        assert len(solve_kr_baseline(inst)) <= 4
