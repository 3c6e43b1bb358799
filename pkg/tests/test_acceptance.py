"""Acceptance criteria 1 to 10.

Each test prints one line ``criterion N: PASS`` or ``criterion N: FAIL``
with a short summary, then asserts.  Run with ``pytest tests/test_acceptance.py -v``.
"""

import itertools
import random
from fractions import Fraction

import pytest

from hitset.generators import FAMILIES, gen_3sat_reduction, gen_random, reduction_counts
from hitset.geometry import segment
from hitset.hrvl import run_hrvl, solve_hrvl
from hitset.instance import Instance, parse
from hitset.lines_greedy import opt2_count, solve_three_slopes_greedy
from hitset.lp import (
    build_set_cover_lp,
    check_optimal,
    kr_parameters,
    run_pairs_103approx,
    run_pairs_4approx,
    solve_kr_baseline,
    solve_lp,
)
from hitset.oracle import CnfFormula, exact_min_hitting_set, is_feasible, optimum, sat_brute_force
from hitset.solvers import applicable, run_solver
from hitset.trifree import build_arrangement_graph, is_triangle_free, run_triangle_free
from hitset.vlhs import residual_instance, run_vlhs

UNGUARDED = dict(max_unions=None, max_candidates=None)


def opt(inst: Instance) -> int:
    return optimum(inst, **UNGUARDED)


@pytest.fixture
def report(capsys):
    def emit(n: int, failures: list, summary: str):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {n}: {status} ({summary})")
        assert not failures, failures[:5]

    return emit


def test_criterion_1_hrvl_exact(report):
    failures, count = [], 0
    for seed in range(250):
        rng = random.Random(seed)
        inst = gen_random("hrvl", seed, lines=rng.randint(0, 5), pairs=rng.randint(0, 5), grid=20)
        hs = solve_hrvl(inst.objects)
        o = opt(inst)
        count += 1
        if not is_feasible(inst, hs.points) or len(hs) != o:
            failures.append((seed, len(hs), o))
    report(1, failures, f"{count} HRVL instances, size == OPT on all")


def test_criterion_2_fig8_golden(report, data_dir):
    inst = parse((data_dir / "fig8.txt").read_text())
    r = run_hrvl(inst.objects, [u.label for u in inst.unions])
    got = {(r.lines[li].label, r.pairs[si].label) for li, si in r.three_hitters}
    failures = []
    if got != {("l2", "c"), ("l3", "b"), ("l4", "f")}:
        failures.append(("three-hitters", sorted(got)))
    if len(r.hitting_set) != 8:
        failures.append(("size", len(r.hitting_set)))
    if r.trace_text() != (data_dir / "fig8_trace.txt").read_text():
        failures.append("trace differs from golden file")
    report(2, failures, "3 three-hitters (l2,c) (l3,b) (l4,f), 8 points, trace byte-identical")


def test_criterion_3_opt2_formula(report):
    failures, count = [], 0
    for seed in range(120):
        rng = random.Random(seed)
        x, y, z = sorted((rng.randint(0, 5) for _ in range(3)), reverse=True)
        inst = gen_random("3slope-lines", seed, x=x, y=y, z=z, span=6, no_triple=True)
        count += 1
        if opt2_count(x, y, z) != opt(inst):
            failures.append((seed, (x, y, z)))
    report(3, failures, f"opt2_count == OPT on {count} instances without 3-intersections")


def test_criterion_4_greedy_75(report):
    failures, worst, above_one, count = [], Fraction(0), 0, 0
    for seed in range(400):
        rng = random.Random(seed)
        x, y, z = (rng.randint(0, 3) for _ in range(3))
        if not 0 < x + y + z <= 9:
            continue
        inst = gen_random("3slope-lines", seed, x=x, y=y, z=z, span=rng.choice([1, 2, 3]))
        hs = solve_three_slopes_greedy(inst.objects)
        o = opt(inst)
        ratio = Fraction(len(hs), o)
        count += 1
        worst = max(worst, ratio)
        above_one += ratio > 1
        if not is_feasible(inst, hs.points) or ratio > Fraction(7, 5):
            failures.append((seed, len(hs), o))
    if not above_one:
        failures.append("greedy was optimal on every instance")
    report(4, failures, f"{count} instances, worst ratio {worst}, {above_one} with ratio > 1")


def test_criterion_5_vlhs_53(report):
    failures, worst = [], {False: Fraction(0), True: Fraction(0)}
    for rays, family in ((False, "vlhs"), (True, "vrays")):
        for seed in range(220):
            rng = random.Random(seed)
            inst = gen_random(family, seed, objects=rng.randint(0, 10))
            r = run_vlhs(inst.objects, rays=rays)
            hs = r.hitting_set
            o = opt(inst)
            if not is_feasible(inst, hs.points) or 3 * len(hs) > 5 * o:
                failures.append((family, seed, len(hs), o))
            if o:
                worst[rays] = max(worst[rays], Fraction(len(hs), o))
            if opt(residual_instance(r)) < r.v_residual + r.h_residual:
                failures.append((family, seed, "residual bound"))
    report(
        5,
        failures,
        f"220 vlhs worst {worst[False]}, 220 vrays worst {worst[True]}, residual OPT >= v'+h' on all",
    )


def test_criterion_6_lp_chain(report):
    failures, w4, w10 = [], Fraction(0), Fraction(0)
    for seed in range(110):
        rng = random.Random(seed)
        n = rng.randint(1, 6)
        inst = gen_random("L-pairs", seed, pairs=n)
        r = run_pairs_4approx(inst)
        o = opt(inst)
        x = len(r.hitting_set)
        lp = r.lp.objective
        ok = (
            check_optimal(r.model, r.lp)
            and lp <= o
            and r.doubled_feasible()
            and is_feasible(inst, r.hitting_set.points)
            and x <= 4 * lp
        )
        if not ok:
            failures.append(("L", seed, x, lp, o))
        w4 = max(w4, x / lp)
        inst = gen_random("SL-pairs", seed, pairs=n)
        r = run_pairs_103approx(inst)
        x = len(r.hitting_set)
        ok = (
            is_feasible(inst, r.hitting_set.points)
            and r.lp.objective <= opt(inst)
            and 3 * x <= 10 * r.lp.objective
            and 3 * x <= 5 * r.inner_lp.objective
        )
        if not ok:
            failures.append(("SL", seed, x, r.lp.objective))
        w10 = max(w10, x / r.lp.objective)
    report(6, failures, f"110 L-pairs worst |X|/LP* {w4}, 110 SL-pairs worst |X|/LP* {w10}")


def test_criterion_7_one_orientation_integral(report):
    failures = []
    for seed in range(60):
        rng = random.Random(seed)
        segs = []
        for _ in range(rng.randint(1, 9)):
            y, a = rng.randint(0, 2), rng.randint(0, 8)
            segs.append(segment(a, y, a + rng.randint(1, 4), y))
        inst = Instance.of(segs)
        lp = solve_lp(build_set_cover_lp(inst)).objective
        if lp != opt(inst):
            failures.append((seed, lp))
    report(7, failures, "LP* == OPT on 60 horizontal-segment instances")


def test_criterion_8_trifree(report):
    dirs = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)]
    failures, count, worst, seed = [], 0, Fraction(0), 0
    while count < 220:
        rng = random.Random(seed)
        seed += 1
        segs = []
        for _ in range(rng.randint(1, 8)):
            (dx, dy), k = rng.choice(dirs), rng.randint(1, 4)
            x, y = rng.randint(0, 6), rng.randint(0, 6)
            segs.append(segment(x, y, x + k * dx, y + k * dy))
        try:
            if not is_triangle_free(build_arrangement_graph(segs)):
                continue
        except ValueError:  # overlapping collinear segments
            continue
        count += 1
        inst = Instance.of(segs)
        try:
            r = run_triangle_free(segs, debug=True)
        except AssertionError as e:
            failures.append((seed, f"invariant: {e}"))
            continue
        o = opt(inst)
        worst = max(worst, Fraction(len(r.hitting_set), o))
        if not is_feasible(inst, r.hitting_set.points) or len(r.hitting_set) > 3 * o:
            failures.append((seed, len(r.hitting_set), o))
    per = {}
    for m in (10, 100, 1000, 10_000):
        r = run_triangle_free(gen_random("trifree-grid", m, segments=m), check_input=m <= 1000)
        per[m] = r.stats.ops / m
    spread = max(per.values()) / min(per.values())
    if spread > 2:
        failures.append(("ops/m spread", per))
    ops = ", ".join(f"{m}:{v:.2f}" for m, v in per.items())
    report(8, failures, f"{count} arrangements, worst ratio {worst}, ops/m {ops}, spread {spread:.2f}")


def _check_formula(f: CnfFormula, failures: list) -> bool:
    _, n_total = reduction_counts(f)
    sat = sat_brute_force(f)
    o = exact_min_hitting_set(gen_3sat_reduction(f), **UNGUARDED).optimum
    if (o == n_total // 2) != sat or (not sat and o < n_total // 2 + 1):
        failures.append((f, o, n_total))
    return sat


def test_criterion_9_reduction(report):
    failures, exhaustive = [], 0
    for n in (1, 2):
        lits = [v for x in range(1, n + 1) for v in (x, -x)]
        clauses = list(itertools.combinations_with_replacement(lits, 3))
        for m in (1, 2):
            for cs in itertools.product(clauses, repeat=m):
                _check_formula(CnfFormula(n, cs), failures)
                exhaustive += 1
    sats = 0
    for seed in range(60):
        rng = random.Random(seed)
        cs = []
        for _ in range(rng.randint(1, 4)):
            # few distinct literals per clause makes unsatisfiable formulas common
            pool = [rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.choice([1, 1, 2, 3]))]
            cs.append(tuple(rng.choice(pool) for _ in range(3)))
        sats += _check_formula(CnfFormula(3, tuple(cs)), failures)
    report(9, failures, f"{exhaustive} exhaustive formulas, 60 random n=3 ({sats} satisfiable)")


def test_criterion_10_cross_solver(report):
    failures, runs, worst_kr = [], 0, Fraction(0)
    for family in FAMILIES:
        for seed in range(12):
            inst = gen_random(family, seed)
            for name in applicable(inst):
                runs += 1
                if not is_feasible(inst, run_solver(name, inst).points):
                    failures.append((family, seed, name))
            if family in ("L-pairs", "SL-pairs"):
                k, r = kr_parameters(inst)
                x, o = len(solve_kr_baseline(inst)), opt(inst)
                worst_kr = max(worst_kr, Fraction(x, o))
                if x > k * r * o or (k, r) == (2, 2) and x > 4 * o:
                    failures.append((family, seed, "kr", x, o))
    for cs in [((1, 2, -1),), ((1, 1, 1), (-1, -1, -1))]:
        inst = gen_3sat_reduction(CnfFormula(2, cs))
        for name in applicable(inst):
            runs += 1
            if not is_feasible(inst, run_solver(name, inst).points):
                failures.append(("sat3", cs, name))
    report(10, failures, f"{runs} solver runs feasible, worst kr ratio {worst_kr}")
