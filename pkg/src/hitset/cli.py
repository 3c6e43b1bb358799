"""Command-line front end.

    hitset generate FAMILY [--seed N] [--PARAM VALUE ...] [-o FILE]
    hitset generate sat3 --cnf FORMULA.cnf [-o FILE]
    hitset solve INSTANCE... [--solver NAME|auto] [--oracle] [--lp] [--json FILE] [--jobs N] [-o FILE]
    hitset verify INSTANCE SOLUTION
    hitset compare INSTANCE
    hitset plot INSTANCE [SOLUTION] -o FILE.svg

Exit codes: 0 success, 2 usage or unusable input, 3 verification failure,
4 refused by the oracle's size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .generators import FAMILIES, GeneratorError, gen_3sat_reduction, gen_random
from .geometry import fmt
from .instance import Instance, ParseError, parse, parse_solution, serialize, serialize_solution
from .lp import LPInfeasible, build_set_cover_lp, solve_lp
from .oracle import (
    DEFAULT_MAX_CANDIDATES,
    DEFAULT_MAX_UNIONS,
    SizeGuardError,
    exact_min_hitting_set,
    parse_dimacs,
    verify_hitting_set,
)
from .solvers import SOLVER_NAMES, NotApplicable, applicable, auto_detect, kr_bound, run_solver, solver_info, vh_bounds
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_GUARD = 0, 2, 3, 4
REPORT_SCHEMA = 1


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


@dataclass
class RunReport:
    """One solver run.  Bounds and ratios are present only when computed."""

    solver: str
    instance: dict
    size: int
    guarantee: str
    bounds: dict = field(default_factory=dict)  # v, h, lp, opt
    ratios: dict = field(default_factory=dict)  # size/opt, size/lp, size/max(v,h)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"schema": REPORT_SCHEMA, **asdict(self)}

    def table(self) -> str:
        rows = [("solver", self.solver), ("guarantee", self.guarantee)]
        rows += [(f"instance.{k}", str(v)) for k, v in self.instance.items()]
        rows.append(("size", str(self.size)))
        rows += [(f"bound.{k}", str(v)) for k, v in self.bounds.items()]
        rows += [(f"ratio.{k}", str(v)) for k, v in self.ratios.items()]
        rows.append(("seconds", f"{self.seconds:.3f}"))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def summarize(inst: Instance) -> dict:
    kinds = inst.kinds()
    return {
        "name": inst.name,
        "unions": len(inst),
        "objects": len(inst.objects),
        "orientations": len(inst.orientations()),
        "kinds": ",".join(f"{k.value}:{kinds[k]}" for k in sorted(kinds, key=lambda k: k.value)),
    }


def _ratio(a: int, b) -> Optional[str]:
    return fmt(Fraction(a) / Fraction(b)) if b else None


# --------------------------------------------------------------------------
# file helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {e.strerror}") from None


def _load_instance(path: str) -> Instance:
    try:
        return parse(_read(path))
    except ParseError as e:
        raise CliError(EXIT_USAGE, f"{path}: {e}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# --------------------------------------------------------------------------
# commands


def _coerce(value: str):
    for conv in (int, float):
        try:
            return conv(value)
        except ValueError:
            pass
    raise CliError(EXIT_USAGE, f"parameter value {value!r} is not a number")


def _params(extra: list[str]) -> dict:
    """``--key value`` pairs (``--flag`` alone means true); dashes become underscores."""
    out, i = {}, 0
    while i < len(extra):
        tok = extra[i]
        if not tok.startswith("--") or len(tok) < 3:
            raise CliError(EXIT_USAGE, f"unexpected argument {tok!r}")
        key = tok[2:].replace("-", "_")
        if "=" in key:
            key, val = key.split("=", 1)
            out[key] = _coerce(val)
            i += 1
        elif i + 1 < len(extra) and not extra[i + 1].startswith("--"):
            out[key] = _coerce(extra[i + 1])
            i += 2
        else:
            out[key] = True
            i += 1
    return out


def cmd_generate(args, extra: list[str]) -> int:
    if args.family == "sat3":
        if not args.cnf:
            raise CliError(EXIT_USAGE, "generate sat3 needs --cnf FILE")
        if extra:
            raise CliError(EXIT_USAGE, f"unexpected arguments for sat3: {' '.join(extra)}")
        try:
            f = parse_dimacs(_read(args.cnf))
        except ValueError as e:
            raise CliError(EXIT_USAGE, f"{args.cnf}: {e}") from None
        inst = gen_3sat_reduction(f)
    else:
        if args.cnf:
            raise CliError(EXIT_USAGE, "--cnf only applies to sat3")
        try:
            inst = gen_random(args.family, seed=args.seed, **_params(extra))
        except GeneratorError as e:
            raise CliError(EXIT_USAGE, str(e)) from None
    _write(args.out, serialize(inst))
    return EXIT_OK


@dataclass
class SolveOptions:
    solver: str = "auto"
    oracle: bool = False
    lp: bool = False
    max_unions: int = DEFAULT_MAX_UNIONS
    max_candidates: int = DEFAULT_MAX_CANDIDATES


def solve_instance(inst: Instance, opts: SolveOptions):
    """Run, verify and measure one solver; returns ``(report, solution)``.

    Raises ``CliError`` on refusal, verification failure or size guard.
    """
    name = auto_detect(inst) if opts.solver == "auto" else opts.solver
    info = solver_info(name)
    t0 = time.perf_counter()
    try:
        hs = run_solver(name, inst)
    except NotApplicable as e:
        raise CliError(EXIT_USAGE, f"refused: {e}") from None
    seconds = time.perf_counter() - t0
    bad = [c.union for c in verify_hitting_set(inst, hs.points) if not c.ok]
    if bad:
        raise CliError(EXIT_VERIFY, f"{name} output misses unions {bad[:10]}; this is a solver bug")
    rep = RunReport(name, summarize(inst), len(hs), info.guarantee)
    if name in ("vlhs53", "vrays53"):
        v, h = vh_bounds(name, inst)
        rep.bounds.update(v=v, h=h)
        rep.ratios["size/max(v,h)"] = _ratio(len(hs), max(v, h))
    if opts.lp or info.lp_factor is not None or name == "kr":
        try:
            lp = solve_lp(build_set_cover_lp(inst)).objective
        except LPInfeasible as e:
            raise CliError(EXIT_USAGE, f"LP: {e}") from None
        rep.bounds["lp"] = fmt(lp)
        rep.ratios["size/lp"] = _ratio(len(hs), lp)
    if name == "kr":
        rep.guarantee = f"k*r = {kr_bound(inst)}"
    if opts.oracle:
        try:
            res = exact_min_hitting_set(inst, max_unions=opts.max_unions, max_candidates=opts.max_candidates)
        except SizeGuardError as e:
            raise CliError(EXIT_GUARD, f"oracle refused: {e}") from None
        rep.bounds["opt"] = res.optimum
        rep.ratios["size/opt"] = _ratio(len(hs), res.optimum) if res.optimum else "1"
    rep.seconds = seconds
    return rep, hs


def _solve_path(path: str, opts: SolveOptions):
    """Worker for batch mode: returns (path, report dict, solution text) or (path, error)."""
    try:
        rep, hs = solve_instance(_load_instance(path), opts)
    except CliError as e:
        return path, None, None, (e.code, str(e))
    return path, rep, serialize_solution(hs), None


def cmd_solve(args, extra) -> int:
    if args.solver != "auto" and args.solver not in SOLVER_NAMES:
        raise CliError(EXIT_USAGE, f"unknown solver {args.solver!r}")
    if args.out and len(args.instances) > 1:
        raise CliError(EXIT_USAGE, "-o takes a single instance; batch runs write INSTANCE.sol files")
    opts = SolveOptions(args.solver, args.oracle, args.lp, args.max_unions, args.max_candidates)
    if args.jobs > 1 and len(args.instances) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_solve_path, args.instances, [opts] * len(args.instances)))
    else:
        results = [_solve_path(p, opts) for p in args.instances]
    code, reports = EXIT_OK, []
    for path, rep, sol, err in results:
        if err is not None:
            print(f"{path}: {err[1]}", file=sys.stderr)
            code = max(code, err[0])
            continue
        out = args.out if args.out else (None if len(args.instances) == 1 and not args.write else path + ".sol")
        if out is not None:
            _write(out, sol)
        if len(args.instances) > 1:
            print(f"== {path}")
        print(rep.table())
        reports.append({"path": path, **rep.to_json()})
    if args.json:
        doc = reports[0] if len(args.instances) == 1 and reports else reports
        _write(args.json, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return code


def cmd_verify(args, extra) -> int:
    inst = _load_instance(args.instance)
    try:
        hs = parse_solution(_read(args.solution))
    except ParseError as e:
        raise CliError(EXIT_USAGE, f"{args.solution}: {e}") from None
    certs = verify_hitting_set(inst, hs.points)
    bad = [c.union for c in certs if not c.ok]
    for c in bad:
        label = inst.unions[c].label or f"#{c}"
        print(f"unhit union {label}")
    print(f"{len(hs)} points, {len(certs) - len(bad)}/{len(certs)} unions hit")
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_compare(args, extra) -> int:
    inst = _load_instance(args.instance)
    try:
        res = exact_min_hitting_set(inst, max_unions=args.max_unions, max_candidates=args.max_candidates)
    except SizeGuardError as e:
        raise CliError(EXIT_GUARD, f"oracle refused: {e}") from None
    print(f"oracle OPT = {res.optimum} ({res.nodes} nodes)")
    code = EXIT_OK
    for name in applicable(inst):
        hs = run_solver(name, inst)
        ok = all(c.ok for c in verify_hitting_set(inst, hs.points))
        ratio = _ratio(len(hs), res.optimum) if res.optimum else "1"
        print(f"{name:<20} size {len(hs):>4}  ratio {ratio:<6} guarantee {solver_info(name).guarantee}"
              + ("" if ok else "  INFEASIBLE"))
        if not ok:
            code = EXIT_VERIFY
    return code


def cmd_plot(args, extra) -> int:
    inst = _load_instance(args.instance)
    hs = None
    if args.solution:
        try:
            hs = parse_solution(_read(args.solution))
        except ParseError as e:
            raise CliError(EXIT_USAGE, f"{args.solution}: {e}") from None
    _write(args.out, render_svg(inst, hs, title=inst.name))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hitset", description="Geometric hitting sets for few orientations.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random or reduction instance",
                       description="Extra --PARAM VALUE pairs go to the family's generator.")
    g.add_argument("family", choices=FAMILIES + ("sat3",))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cnf", help="DIMACS formula (sat3 only)")
    g.add_argument("-o", "--out", help="output file (default: stdout)")
    g.set_defaults(func=cmd_generate, takes_extra=True)

    s = sub.add_parser("solve", help="solve, verify and report")
    s.add_argument("instances", nargs="+", metavar="INSTANCE")
    s.add_argument("--solver", default="auto", help=f"auto or one of: {', '.join(SOLVER_NAMES)}")
    s.add_argument("--oracle", action="store_true", help="also compute OPT exactly")
    s.add_argument("--lp", action="store_true", help="also compute the LP lower bound")
    s.add_argument("--json", metavar="FILE", help="write the report(s) as JSON")
    s.add_argument("--jobs", type=int, default=1, help="solve several instances in parallel")
    s.add_argument("-o", "--out", help="solution file (single instance)")
    s.add_argument("--write", action="store_true", help="write INSTANCE.sol even for a single instance")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="run every applicable solver against the oracle")
    c.add_argument("instance")
    c.set_defaults(func=cmd_compare)

    for sp in (s, c):
        sp.add_argument("--max-unions", type=int, default=DEFAULT_MAX_UNIONS, help="oracle size guard")
        sp.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES, help="oracle size guard")

    pl = sub.add_parser("plot", help="render an instance (and solution) as SVG")
    pl.add_argument("instance")
    pl.add_argument("solution", nargs="?")
    pl.add_argument("-o", "--out", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and not getattr(args, "takes_extra", False):
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        return args.func(args, extra)
    except CliError as e:
        print(f"hitset: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
