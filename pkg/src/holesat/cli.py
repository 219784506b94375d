"""Command-line entry point.

Subcommands: ``encode`` (problem flags -> DIMACS + variable registry),
``solve`` (encode, run solver, verify model / check certificate),
``verify-witness`` (point file + property flags, no solver needed),
``count-holes``, ``construct`` (generators and bundled witness sets),
``search`` (annealing witness search), ``recipe`` (named pipelines with
expected verdicts).

Exit codes: 0 = pass, 1 = a claimed property failed (wrong verdict,
failed verification, missing witness), 2 = infrastructure trouble
(missing binaries, timeouts, unreadable files, bad flags).
"""

from __future__ import annotations

import argparse
import json
import logging
import shutil
import sys
import tempfile
from pathlib import Path

from . import __version__
from .constructions import WITNESS_COORDS, generate_double_circle, generate_two_ring, witness
from .encoder import MODES, HoleProblem, build_instance
from .geometry import read_points, write_points
from .holes import enumerate_holes, find_disjoint_tuple
from .recipes import RECIPE_NAMES, run_recipe
from .search import SearchObjective, count_gons, search_witness
from .solver import (
    SolverError,
    default_timeout,
    default_workers,
    discover_checker,
    discover_solver,
    solve_instance,
)

PASS, FAIL, ERROR = 0, 1, 2

_OBJECTIVE_MODES = (
    "two-disjoint-holes",
    "two-interior-disjoint-holes",
    "forbid-hole",
    "forbid-gon",
)


def _sizes_arg(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("empty size list")
    return sizes


def _seeds_arg(text: str) -> list[int]:
    seeds: list[int] = []
    try:
        for part in text.split(","):
            if "-" in part:
                lo, hi = part.split("-", 1)
                seeds.extend(range(int(lo), int(hi) + 1))
            else:
                seeds.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected seeds like '0-7' or '1,5,9', got {text!r}")
    if not seeds:
        raise argparse.ArgumentTypeError("empty seed list")
    return seeds


def _add_problem_flags(p: argparse.ArgumentParser, modes=MODES) -> None:
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--mode", choices=modes, required=True)
    p.add_argument("--sizes", type=_sizes_arg, help="hole sizes, e.g. 5,5")
    p.add_argument("--k", type=int, help="shorthand for --sizes K")
    p.add_argument("--threshold", type=int, default=0, help="count-holes threshold")


def _add_variant_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--orient-vars",
        choices=("compact", "explicit"),
        default="compact",
        help="one orientation variable per sorted triple, or six per triple "
        "(one per permutation) chained by equivalences",
    )
    p.add_argument("--hints", action="store_true", help="add implied window clauses")
    p.add_argument("--relaxed-lr", action="store_true", help="wider side-variable scope")
    p.add_argument(
        "--simplified-h5", action="store_true", help="define 5-holes from triangles only"
    )
    p.add_argument(
        "--directional-defs",
        action="store_true",
        help="keep only the implication direction each definition needs",
    )


def _problem_from_args(args) -> HoleProblem:
    if args.sizes and args.k is not None:
        raise ValueError("pass --sizes or --k, not both")
    sizes = args.sizes or ((args.k,) if args.k is not None else None)
    if sizes is None:
        raise ValueError("one of --sizes or --k is required")
    kwargs = dict(n=args.n, mode=args.mode, sizes=sizes, threshold=args.threshold)
    if hasattr(args, "orient_vars"):
        kwargs.update(
            orient_vars=args.orient_vars,
            hints=args.hints,
            relaxed_lr=args.relaxed_lr,
            simplified_h5=args.simplified_h5,
            directional_defs=args.directional_defs,
        )
    return HoleProblem(**kwargs)


def cmd_encode(args) -> int:
    problem = _problem_from_args(args)
    inst = build_instance(problem)
    out = Path(args.output or f"{problem.key()}.cnf")
    inst.write_dimacs(out)
    reg = Path(args.registry) if args.registry else out.with_suffix(".vars")
    inst.write_registry(reg)
    print(f"wrote {out} ({inst.num_vars} variables, {inst.num_clauses} clauses)")
    print(f"wrote {reg}")
    if args.stats:
        for family, count in inst.registry.family_counts.items():
            print(f"  vars {family}: {count}")
        for label, count in inst.groups:
            print(f"  clauses {label}: {count}")
    return PASS


def cmd_solve(args) -> int:
    problem = _problem_from_args(args)
    inst = build_instance(problem)
    solver = discover_solver(args.solver)
    want_proof = bool(args.proof or args.check)
    # resolve the checker eagerly when asked for so a missing binary is a
    # clear error, not a silently skipped verification
    checker = discover_checker(args.checker) if args.check else None
    workdir = args.workdir or tempfile.mkdtemp(prefix="holesat-")
    timeout = args.timeout if args.timeout is not None else default_timeout()
    report = solve_instance(
        inst, solver, checker, timeout=timeout, workdir=workdir, want_proof=want_proof
    )
    if args.proof and report.certificate_path:
        shutil.copyfile(report.certificate_path, args.proof)
        report.certificate_path = args.proof
    print(report.to_text())
    if args.summary:
        report.write_summary(args.summary)
    if report.verdict == "UNKNOWN":
        print(f"error: {report.detail}", file=sys.stderr)
        return ERROR
    if report.verification == "failed":
        return FAIL
    if args.expect and report.verdict != args.expect.upper():
        print(f"expected {args.expect.upper()}, got {report.verdict}", file=sys.stderr)
        return FAIL
    return PASS


def cmd_verify_witness(args) -> int:
    try:
        s = read_points(args.file)
    except ValueError as exc:
        message = str(exc)
        if "collinear" in message or "duplicate" in message:
            print(f"fail: general position ({message})")
            print("result: fail")
            return FAIL
        raise
    checks: list[tuple[str, bool, str]] = []
    for k in args.hole or []:
        c = len(enumerate_holes(s, k))
        checks.append((f"contains a {k}-hole", c >= 1, f"count={c}"))
    for k in args.no_hole or []:
        c = len(enumerate_holes(s, k))
        checks.append((f"no {k}-hole", c == 0, f"count={c}"))
    for k in args.gon or []:
        c = count_gons(s, k)
        checks.append((f"contains a {k}-gon", c >= 1, f"count={c}"))
    for k in args.no_gon or []:
        c = count_gons(s, k)
        checks.append((f"no {k}-gon", c == 0, f"count={c}"))
    for sizes, mode, want in (
        [(x, "disjoint", True) for x in args.disjoint_holes or []]
        + [(x, "disjoint", False) for x in args.no_disjoint_holes or []]
        + [(x, "interior-disjoint", True) for x in args.interior_disjoint_holes or []]
        + [(x, "interior-disjoint", False) for x in args.no_interior_disjoint_holes or []]
    ):
        tag = "/".join(map(str, sizes))
        found = find_disjoint_tuple(s, sizes, mode)
        if want:
            note = " ".join(str(h.indices) for h in found) if found else "none"
            checks.append((f"contains {mode} {tag} holes", found is not None, note))
        else:
            note = "witness " + " ".join(str(h.indices) for h in found) if found else "none"
            checks.append((f"no {mode} {tag} holes", found is None, note))
    if args.canonical:
        checks.append(("canonical form", s.is_canonical(), ""))
    if not checks:
        checks.append((f"general position ({len(s)} points)", True, ""))
    for desc, ok, note in checks:
        suffix = f" ({note})" if note else ""
        print(f"{'pass' if ok else 'fail'}: {desc}{suffix}")
    passed = all(ok for _, ok, _ in checks)
    print(f"result: {'pass' if passed else 'fail'}")
    return PASS if passed else FAIL


def cmd_count_holes(args) -> int:
    s = read_points(args.file)
    print(len(enumerate_holes(s, args.k)))
    return PASS


def cmd_construct(args) -> int:
    if args.name in ("double-circle", "two-ring"):
        if args.n is None:
            raise ValueError(f"{args.name} needs --n")
        maker = generate_double_circle if args.name == "double-circle" else generate_two_ring
        s = maker(args.n, radius=args.radius)
    else:
        if args.n is not None:
            raise ValueError(f"{args.name} has a fixed size; drop --n")
        s = witness(args.name)
    if args.output:
        write_points(args.output, s, header=f"{args.name} n={len(s)}")
        print(f"wrote {args.output} ({len(s)} points)")
    else:
        for p in s.points:
            print(f"{p.x} {p.y}")
    return PASS


def cmd_search(args) -> int:
    if args.sizes and args.k is not None:
        raise ValueError("pass --sizes or --k, not both")
    sizes = args.sizes or ((args.k,) if args.k is not None else None)
    if sizes is None:
        raise ValueError("one of --sizes or --k is required")
    obj = SearchObjective(args.mode, sizes)
    workers = args.workers if args.workers is not None else default_workers()
    result = search_witness(
        args.n, obj, seeds=args.seeds, budget=args.budget, box=args.box, workers=workers
    )
    if result is None:
        print(
            f"no witness: n={args.n}, {obj.describe()}, "
            f"{len(args.seeds)} restarts x {args.budget} proposals"
        )
        return FAIL
    w, seed = result
    print(f"witness found: n={args.n} with zero {obj.describe()} (seed {seed})")
    if args.output:
        write_points(args.output, w, header=f"search n={args.n} {obj.describe()} seed={seed}")
        print(f"wrote {args.output}")
    else:
        for p in w.points:
            print(f"{p.x} {p.y}")
    return PASS


def cmd_recipe(args) -> int:
    solver = discover_solver(args.solver)
    if args.checker:
        checker = discover_checker(args.checker)
    else:
        try:
            checker = discover_checker()
        except SolverError:
            checker = None
    timeout = args.timeout if args.timeout is not None else default_timeout()
    result = run_recipe(
        args.name,
        solver=solver,
        checker=checker,
        timeout=timeout,
        workers=args.workers,
        workdir=args.workdir,
        want_proof=not args.no_proof,
    )
    print(result.to_text())
    if args.report:
        payload = {
            "recipe": result.name,
            "passed": result.passed,
            "steps": [
                {
                    "label": s.step.label,
                    "expect": s.step.expect,
                    "verdict": s.report.verdict,
                    "verification": s.report.verification,
                    "wall_time": s.report.wall_time,
                    "passed": s.passed,
                    "detail": s.note,
                }
                for s in result.steps
            ],
        }
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.report}")
    if result.passed:
        return PASS
    if any(s.report.verdict == "UNKNOWN" for s in result.steps):
        return ERROR
    return FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holesat",
        description="k-gon/k-hole questions on point sets as SAT instances",
    )
    parser.add_argument("--version", action="version", version=f"holesat {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="build a DIMACS CNF instance")
    _add_problem_flags(p)
    _add_variant_flags(p)
    p.add_argument("-o", "--output", help="CNF path (default <instance-key>.cnf)")
    p.add_argument("--registry", help="variable-registry path (default <output>.vars)")
    p.add_argument("--stats", action="store_true", help="print per-family/group counts")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", help="encode, solve, and verify one instance")
    _add_problem_flags(p)
    _add_variant_flags(p)
    p.add_argument("--solver", help="solver preset name or binary path")
    p.add_argument("--checker", help="proof-checker preset name or binary path")
    p.add_argument("--timeout", type=float, help="seconds per solver call")
    p.add_argument("--proof", help="keep the UNSAT certificate at this path")
    p.add_argument("--check", action="store_true", help="run the proof checker on UNSAT")
    p.add_argument("--expect", choices=("sat", "unsat"), help="fail unless this verdict")
    p.add_argument("--workdir", help="keep CNF/model/proof files here")
    p.add_argument("--summary", help="write a JSON report here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "verify-witness", help="check structural properties of a point file (no solver)"
    )
    p.add_argument("file", help="point file: one 'x y' pair per line")
    p.add_argument("--hole", type=int, action="append", metavar="K")
    p.add_argument("--no-hole", type=int, action="append", metavar="K")
    p.add_argument("--gon", type=int, action="append", metavar="K")
    p.add_argument("--no-gon", type=int, action="append", metavar="K")
    p.add_argument("--disjoint-holes", type=_sizes_arg, action="append", metavar="SIZES")
    p.add_argument("--no-disjoint-holes", type=_sizes_arg, action="append", metavar="SIZES")
    p.add_argument(
        "--interior-disjoint-holes", type=_sizes_arg, action="append", metavar="SIZES"
    )
    p.add_argument(
        "--no-interior-disjoint-holes", type=_sizes_arg, action="append", metavar="SIZES"
    )
    p.add_argument("--canonical", action="store_true", help="require canonical form")
    p.set_defaults(func=cmd_verify_witness)

    p = sub.add_parser("count-holes", help="count k-holes in a point file")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_count_holes)

    p = sub.add_parser("construct", help="generate or emit a known point set")
    p.add_argument("name", choices=("double-circle", "two-ring") + tuple(sorted(WITNESS_COORDS)))
    p.add_argument("--n", type=int, help="size for the generators")
    p.add_argument("--radius", type=int, default=10**6, help="outer radius for the generators")
    p.add_argument("-o", "--output", help="write a point file instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="anneal for a witness with zero forbidden structures")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=_OBJECTIVE_MODES, required=True)
    p.add_argument("--sizes", type=_sizes_arg)
    p.add_argument("--k", type=int, help="shorthand for --sizes K")
    p.add_argument("--seeds", type=_seeds_arg, default=list(range(8)), metavar="SPEC",
                   help="restart seeds, e.g. '0-7' or '3,5'")
    p.add_argument("--budget", type=int, default=20000, help="proposals per restart")
    p.add_argument("--box", type=int, default=10**6, help="coordinate bound")
    p.add_argument("--workers", type=int, help="parallel restarts")
    p.add_argument("-o", "--output", help="write the witness point file here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("recipe", help="run a named pipeline with expected verdicts")
    p.add_argument("name", choices=RECIPE_NAMES)
    p.add_argument("--solver", help="solver preset name or binary path")
    p.add_argument("--checker", help="proof-checker preset name or binary path")
    p.add_argument("--timeout", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--workdir", help="keep per-instance files here")
    p.add_argument("--no-proof", action="store_true", help="skip certificates entirely")
    p.add_argument("--report", help="write a JSON step report here")
    p.set_defaults(func=cmd_recipe)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
