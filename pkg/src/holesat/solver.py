"""Subprocess harness: run SAT solvers and proof checkers, verify models.

Solvers are pluggable through :class:`SolverConfig` (binary path, argument
template with ``{cnf}``/``{proof}`` placeholders, output dialect). Two
dialects ship: ``"competition"`` for solvers emitting standard
``s SATISFIABLE`` / ``v ...`` output with DRAT certificates, and
``"picosat-RUP"`` for solvers whose certificates are RUP files that may
start with a ``%`` comment line (stripped before checking). The parser is
lenient about decorations such as ``s SATISFIABLE: file.cnf``.

Configuration precedence for solver/checker/timeout/workers: explicit
argument, then environment (``HOLESAT_SOLVER``, ``HOLESAT_CHECKER``,
``HOLESAT_TIMEOUT``, ``HOLESAT_WORKERS``), then a JSON config file
(``HOLESAT_CONFIG`` or ``./holesat.json``), then a PATH scan over known
solvers. Values may name a known tool ("varisat", "splr", "rate",
"drat-trim") or give a binary path.

SAT models are decoded to a :class:`~holesat.geometry.Signotope` and
verified semantically against the problem by the orientation-only
predicates of :mod:`holesat.abstract` — no clause information is reused.
"""

from __future__ import annotations

import json
import os
import shutil
import subprocess
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Mapping, Sequence

from . import abstract
from .encoder import DISJOINT_MODES, CnfInstance, HoleProblem, VarRegistry
from .geometry import Signotope, check_signotope

DEFAULT_TIMEOUT = 600.0
DEFAULT_WORKERS = 4

Verdict = Literal["SAT", "UNSAT", "UNKNOWN"]


class SolverError(RuntimeError):
    """Infrastructure failure: missing binary, bad config, unusable output."""


@dataclass(frozen=True)
class SolverConfig:
    path: str
    args: tuple[str, ...] = ("{cnf}",)
    proof_args: tuple[str, ...] = ()
    dialect: str = "competition"
    name: str = ""

    def identity(self) -> str:
        return self.name or os.path.basename(self.path)

    def argv(self, cnf: str, proof: str | None = None) -> list[str]:
        parts = [self.path]
        if proof is not None:
            if not self.proof_args:
                raise SolverError(
                    f"solver {self.identity()} has no proof argument template"
                )
            parts += [a.format(cnf=cnf, proof=proof) for a in self.proof_args]
        parts += [a.format(cnf=cnf, proof=proof or "") for a in self.args]
        return parts


@dataclass(frozen=True)
class CheckerConfig:
    path: str
    args: tuple[str, ...] = ("{cnf}", "{proof}")
    name: str = ""

    def identity(self) -> str:
        return self.name or os.path.basename(self.path)

    def argv(self, cnf: str, proof: str) -> list[str]:
        return [self.path] + [a.format(cnf=cnf, proof=proof) for a in self.args]


KNOWN_SOLVERS: dict[str, dict] = {
    "varisat": dict(
        args=("{cnf}",),
        proof_args=("--proof", "{proof}", "--proof-format", "drat"),
        dialect="competition",
    ),
    "splr": dict(
        args=("-q", "-C", "-r", "-", "{cnf}"),
        proof_args=("-c", "-p", "{proof}"),
        dialect="competition",
    ),
    "picosat": dict(
        args=("{cnf}",),
        proof_args=("-R", "{proof}"),
        dialect="picosat-RUP",
    ),
}

KNOWN_CHECKERS: dict[str, dict] = {
    # operational deletion semantics for drat-trim compatibility: solvers
    # routinely emit unit deletions that strict checking rejects
    "rate": dict(args=("--skip-unit-deletions", "{cnf}", "{proof}")),
    "drat-trim": dict(args=("{cnf}", "{proof}")),
    "gratgen": dict(args=("{cnf}", "{proof}")),
}


def load_config(path: str | None = None) -> dict:
    """JSON config mapping, or {} when no config file exists."""
    candidate = path or os.environ.get("HOLESAT_CONFIG") or "holesat.json"
    p = Path(candidate)
    if not p.is_file():
        return {}
    with open(p) as f:
        return json.load(f)


def _resolve_tool(spec, known: dict[str, dict], cls, kind: str):
    """A config object from a name, a path, or a mapping."""
    if isinstance(spec, cls):
        return spec
    if isinstance(spec, Mapping):
        return cls(**spec)
    if not isinstance(spec, str) or not spec:
        raise SolverError(f"cannot interpret {kind} spec {spec!r}")
    base = os.path.basename(spec)
    path = spec if os.path.sep in spec else shutil.which(spec)
    if path is None:
        raise SolverError(f"{kind} binary {spec!r} not found on PATH")
    if not os.path.isfile(path):
        raise SolverError(f"{kind} binary {path!r} does not exist")
    preset = known.get(base, {})
    return cls(path=path, name=base, **preset)


def discover_solver(
    spec=None, config: dict | None = None
) -> SolverConfig:
    """Solver from explicit spec, environment, config file, or PATH scan."""
    if spec is not None:
        return _resolve_tool(spec, KNOWN_SOLVERS, SolverConfig, "solver")
    env = os.environ.get("HOLESAT_SOLVER")
    if env:
        return _resolve_tool(env, KNOWN_SOLVERS, SolverConfig, "solver")
    cfg = config if config is not None else load_config()
    if "solver" in cfg:
        return _resolve_tool(cfg["solver"], KNOWN_SOLVERS, SolverConfig, "solver")
    for name in KNOWN_SOLVERS:
        path = shutil.which(name)
        if path:
            return SolverConfig(path=path, name=name, **KNOWN_SOLVERS[name])
    raise SolverError(
        "no SAT solver found: set HOLESAT_SOLVER, add a 'solver' entry to "
        "holesat.json, or install one of " + ", ".join(KNOWN_SOLVERS)
    )


def discover_checker(
    spec=None, config: dict | None = None
) -> CheckerConfig:
    """Proof checker from explicit spec, environment, config, or PATH."""
    if spec is not None:
        return _resolve_tool(spec, KNOWN_CHECKERS, CheckerConfig, "checker")
    env = os.environ.get("HOLESAT_CHECKER")
    if env:
        return _resolve_tool(env, KNOWN_CHECKERS, CheckerConfig, "checker")
    cfg = config if config is not None else load_config()
    if "checker" in cfg:
        return _resolve_tool(
            cfg["checker"], KNOWN_CHECKERS, CheckerConfig, "checker"
        )
    for name in KNOWN_CHECKERS:
        path = shutil.which(name)
        if path:
            return CheckerConfig(path=path, name=name, **KNOWN_CHECKERS[name])
    raise SolverError(
        "no proof checker found: set HOLESAT_CHECKER, add a 'checker' entry "
        "to holesat.json, or install one of " + ", ".join(KNOWN_CHECKERS)
    )


def default_timeout(config: dict | None = None) -> float:
    env = os.environ.get("HOLESAT_TIMEOUT")
    if env:
        return float(env)
    cfg = config if config is not None else load_config()
    return float(cfg.get("timeout", DEFAULT_TIMEOUT))


def default_workers(config: dict | None = None) -> int:
    env = os.environ.get("HOLESAT_WORKERS")
    if env:
        return int(env)
    cfg = config if config is not None else load_config()
    return int(cfg.get("workers", DEFAULT_WORKERS))


@dataclass
class SolveReport:
    verdict: Verdict
    model: dict[int, bool] | None = None
    certificate_path: str | None = None
    wall_time: float = 0.0
    solver: str = ""
    verification: Literal["passed", "failed", "skipped"] = "skipped"
    detail: str = ""
    instance: str = ""

    def to_text(self) -> str:
        lines = [
            f"instance: {self.instance}" if self.instance else None,
            f"verdict: {self.verdict}",
            f"solver: {self.solver}",
            f"wall-time: {self.wall_time:.3f}",
            f"verification: {self.verification}",
            f"certificate: {self.certificate_path}"
            if self.certificate_path
            else None,
            f"detail: {self.detail}" if self.detail else None,
        ]
        return "\n".join(l for l in lines if l is not None) + "\n"

    def write_summary(self, path) -> None:
        data = {
            "instance": self.instance,
            "verdict": self.verdict,
            "solver": self.solver,
            "wall_time": self.wall_time,
            "verification": self.verification,
            "certificate_path": self.certificate_path,
            "model_size": len(self.model) if self.model else 0,
            "detail": self.detail,
        }
        with open(path, "w") as f:
            json.dump(data, f, indent=2)
            f.write("\n")


def parse_solver_output(text: str, dialect: str = "competition"):
    """(verdict or None, model literals) from solver stdout.

    Tolerates trailing decorations on the status line (splr appends the
    file name) and models split across multiple ``v`` lines. Both shipped
    dialects use the same status/model syntax and differ only in
    certificate format.
    """
    verdict: Verdict | None = None
    lits: list[int] = []
    for line in text.splitlines():
        if line.startswith("s ") or line == "s":
            tokens = line.split()
            if len(tokens) < 2:
                continue
            word = tokens[1].rstrip(":").upper()
            if word == "SATISFIABLE":
                verdict = "SAT"
            elif word == "UNSATISFIABLE":
                verdict = "UNSAT"
            elif word in ("UNKNOWN", "INDETERMINATE"):
                verdict = "UNKNOWN"
        elif line.startswith("v ") or line == "v":
            for tok in line.split()[1:]:
                try:
                    lit = int(tok)
                except ValueError:
                    continue
                if lit != 0:
                    lits.append(lit)
    return verdict, lits


def run_solver(
    cnf_path,
    config: SolverConfig | None = None,
    timeout: float | None = None,
    proof_path=None,
) -> SolveReport:
    """One solver child process over an on-disk DIMACS file.

    Timeouts yield verdict UNKNOWN with a ``timeout`` detail; crashes and
    unparsable output are likewise UNKNOWN but carry distinct details.
    """
    cfg = config or discover_solver()
    limit = timeout if timeout is not None else default_timeout()
    argv = cfg.argv(str(cnf_path), str(proof_path) if proof_path else None)
    start = time.monotonic()
    try:
        proc = subprocess.run(
            argv, capture_output=True, text=True, timeout=limit
        )
    except subprocess.TimeoutExpired:
        return SolveReport(
            verdict="UNKNOWN",
            wall_time=time.monotonic() - start,
            solver=cfg.identity(),
            detail=f"timeout after {limit:.0f}s",
        )
    except OSError as exc:
        raise SolverError(f"failed to launch {argv[0]}: {exc}") from exc
    wall = time.monotonic() - start
    verdict, lits = parse_solver_output(proc.stdout, cfg.dialect)
    if verdict is None:
        tail = (proc.stdout + proc.stderr).strip().splitlines()[-3:]
        kind = (
            "unparsable solver output"
            if proc.returncode in (0, 10, 20)
            else f"solver crash (exit {proc.returncode})"
        )
        return SolveReport(
            verdict="UNKNOWN",
            wall_time=wall,
            solver=cfg.identity(),
            detail=f"{kind}: {' | '.join(tail)}",
        )
    model = {abs(l): l > 0 for l in lits} if verdict == "SAT" else None
    return SolveReport(
        verdict=verdict,
        model=model,
        certificate_path=str(proof_path)
        if proof_path and verdict == "UNSAT"
        else None,
        wall_time=wall,
        solver=cfg.identity(),
    )


def normalize_certificate(path) -> str:
    """Certificate usable by a DRAT checker; strips a leading % comment.

    Some solvers prepend a comment line (e.g. ``%RUPD32 ...``) that
    checkers reject; the cleaned copy is written next to the original.
    """
    p = Path(path)
    with open(p, "rb") as f:
        head = f.read(1)
        if head != b"%":
            return str(p)
        f.readline()
        rest = f.read()
    cleaned = p.with_suffix(p.suffix + ".clean")
    with open(cleaned, "wb") as f:
        f.write(rest)
    return str(cleaned)


def run_proof_check(
    cnf_path,
    certificate_path,
    checker: CheckerConfig | None = None,
    timeout: float | None = None,
) -> tuple[bool, str]:
    """(passed, detail) from the configured proof checker."""
    cfg = checker or discover_checker()
    limit = timeout if timeout is not None else default_timeout()
    cert = normalize_certificate(certificate_path)
    argv = cfg.argv(str(cnf_path), cert)
    try:
        proc = subprocess.run(
            argv, capture_output=True, text=True, timeout=limit
        )
    except subprocess.TimeoutExpired:
        return False, f"checker timeout after {limit:.0f}s"
    except OSError as exc:
        raise SolverError(f"failed to launch {argv[0]}: {exc}") from exc
    out = proc.stdout + proc.stderr
    ok = proc.returncode == 0 and "NOT VERIFIED" not in out
    if ok:
        return True, ""
    tail = " | ".join(out.strip().splitlines()[-3:])
    return False, f"checker {cfg.identity()} exit {proc.returncode}: {tail}"


def decode_model(
    model: Mapping[int, bool], registry: VarRegistry | Mapping[int, tuple]
) -> Signotope:
    """Signotope from the orientation variables of a satisfying assignment.

    With explicit per-permutation variables, all six values of a triple
    must be consistent (the alternating clauses guarantee it; a mismatch
    means the model or registry is corrupt).
    """
    items = registry.items()
    signs: dict[tuple[int, int, int], int] = {}
    n = 0
    for ident, tag in items:
        if tag[0] != "O":
            continue
        a, b, c = tag[1], tag[2], tag[3]
        n = max(n, a + 1, b + 1, c + 1)
        if ident not in model:
            raise ValueError(f"model does not cover orientation variable {tag}")
        value = 1 if model[ident] else -1
        key = tuple(sorted((a, b, c)))
        parity = 1 if (a, b, c) in (
            (key[0], key[1], key[2]),
            (key[1], key[2], key[0]),
            (key[2], key[0], key[1]),
        ) else -1
        resolved = value * parity
        if key in signs and signs[key] != resolved:
            raise ValueError(
                f"inconsistent orientation variables for triple {key}"
            )
        signs[key] = resolved
    return Signotope(n=n, signs=signs)


@dataclass
class VerifyResult:
    passed: bool
    counterexample: tuple | None = None
    description: str = ""


def verify_model(sig: Signotope, problem: HoleProblem) -> VerifyResult:
    """Semantic check of a decoded model against the problem.

    Recomputes the forbidden structure from triple orientations alone
    (axioms, then holes via triple emptiness, disjointness via separating
    pairs); returns the violating tuple on failure.
    """
    bad = check_signotope(sig)
    if bad:
        return VerifyResult(False, tuple(bad[:3]), "signotope axioms violated")
    if sig.n != problem.n:
        return VerifyResult(
            False, (sig.n, problem.n), "signotope size mismatch"
        )
    if any(sig.chi(0, a, b) != 1 for a in range(1, sig.n) for b in range(a + 1, sig.n)):
        return VerifyResult(False, None, "not sorted around first point")
    if problem.mode in DISJOINT_MODES:
        mode = (
            "disjoint"
            if problem.mode == "two-disjoint-holes"
            else "interior-disjoint"
        )
        found = abstract.find_disjoint_tuple(sig, problem.sizes, mode)
        if found is not None:
            return VerifyResult(
                False,
                tuple(h.indices for h in found),
                f"{mode} holes of sizes {problem.sizes} present",
            )
        return VerifyResult(True)
    k = problem.sizes[0]
    if problem.mode == "forbid-hole":
        holes = abstract.enumerate_holes(sig, k)
        if holes:
            return VerifyResult(False, holes[0].indices, f"{k}-hole present")
        return VerifyResult(True)
    if problem.mode == "forbid-gon":
        gons = abstract.enumerate_gons(sig, k)
        if gons:
            return VerifyResult(False, gons[0].indices, f"{k}-gon present")
        return VerifyResult(True)
    if problem.mode == "count-holes":
        count = len(abstract.enumerate_holes(sig, k))
        if count >= problem.threshold:
            return VerifyResult(
                False, (count,), f"{count} {k}-holes >= threshold {problem.threshold}"
            )
        return VerifyResult(True)
    raise ValueError(f"unknown mode {problem.mode!r}")


def solve_instance(
    instance: CnfInstance,
    solver: SolverConfig | None = None,
    checker: CheckerConfig | None = None,
    timeout: float | None = None,
    workdir=None,
    want_proof: bool = False,
) -> SolveReport:
    """Write, solve, and verify one instance end to end.

    SAT models are decoded and checked semantically (verification field
    ``passed``/``failed``); UNSAT certificates are checked when requested
    and a checker is available, otherwise verification is ``skipped``.
    """
    cfg = solver or discover_solver()
    own_dir = workdir is None
    base = Path(tempfile.mkdtemp(prefix="holesat-")) if own_dir else Path(workdir)
    base.mkdir(parents=True, exist_ok=True)
    key = instance.problem.key()
    cnf = base / f"{key}.cnf"
    instance.write_dimacs(cnf)
    instance.write_registry(base / f"{key}.reg")
    proof = base / f"{key}.drat" if want_proof else None
    report = run_solver(cnf, cfg, timeout=timeout, proof_path=proof)
    report.instance = key
    if report.verdict == "SAT":
        sig = decode_model(report.model, instance.registry)
        result = verify_model(sig, instance.problem)
        report.verification = "passed" if result.passed else "failed"
        if not result.passed:
            report.detail = (
                f"model verification failed: {result.description}"
                f" {result.counterexample}"
            )
    elif report.verdict == "UNSAT" and want_proof:
        try:
            chk = checker or discover_checker()
        except SolverError:
            chk = None
        if chk is None:
            report.verification = "skipped"
        else:
            ok, detail = run_proof_check(cnf, proof, chk, timeout=timeout)
            report.verification = "passed" if ok else "failed"
            if not ok:
                report.detail = detail
    return report


def run_batch(
    instances: Sequence[CnfInstance],
    solver: SolverConfig | None = None,
    checker: CheckerConfig | None = None,
    timeout: float | None = None,
    workers: int | None = None,
    workdir=None,
    want_proof: bool = False,
) -> dict[str, SolveReport]:
    """Concurrent solves, merged by instance key."""
    cfg = solver or discover_solver()
    count = workers if workers is not None else default_workers()
    reports: dict[str, SolveReport] = {}
    with ThreadPoolExecutor(max_workers=max(1, count)) as pool:
        futures = {
            instance.problem.key(): pool.submit(
                solve_instance,
                instance,
                cfg,
                checker,
                timeout,
                workdir,
                want_proof,
            )
            for instance in instances
        }
        for key, fut in futures.items():
            reports[key] = fut.result()
    return reports
