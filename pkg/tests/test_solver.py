"""Solver harness: output parsing, error classing, decoding, verification."""

from __future__ import annotations

import json
import os
import random
import stat

import pytest

from holesat.encoder import HoleProblem, assignment_from_chirotope, build_instance
from holesat.geometry import canonicalize, chirotope
from holesat.holes import enumerate_holes
from holesat.solver import (
    KNOWN_CHECKERS,
    KNOWN_SOLVERS,
    CheckerConfig,
    SolverConfig,
    SolverError,
    decode_model,
    default_timeout,
    default_workers,
    discover_checker,
    discover_solver,
    load_config,
    normalize_certificate,
    parse_solver_output,
    run_batch,
    run_solver,
    solve_instance,
    verify_model,
)

from conftest import HAVE_CHECKER, random_point_set, requires_checker, requires_solver


# --- parsing --------------------------------------------------------------

def test_parse_competition_output():
    text = "c comment\ns SATISFIABLE\nv 1 -2 3\nv -4 0\n"
    assert parse_solver_output(text) == ("SAT", [1, -2, 3, -4])
    assert parse_solver_output("s UNSATISFIABLE\n") == ("UNSAT", [])
    assert parse_solver_output("s UNKNOWN\n") == ("UNKNOWN", [])
    assert parse_solver_output("nothing to see\n") == (None, [])


def test_parse_tolerates_status_decorations():
    # some solvers echo the file name after the status word
    text = "s SATISFIABLE: /tmp/foo.cnf\ns SATISFIABLE\nv 2 -1 0\n"
    assert parse_solver_output(text) == ("SAT", [2, -1])


def test_parse_stops_model_at_zero():
    assert parse_solver_output("s SATISFIABLE\nv 5 0 trailing\n")[1] == [5]


# --- tool configuration ---------------------------------------------------

def test_solver_argv_substitution():
    cfg = SolverConfig(
        path="/bin/fake",
        args=("-q", "{cnf}"),
        proof_args=("--proof", "{proof}"),
        name="fake",
    )
    assert cfg.argv("a.cnf") == ["/bin/fake", "-q", "a.cnf"]
    assert cfg.argv("a.cnf", "p.drat") == [
        "/bin/fake", "--proof", "p.drat", "-q", "a.cnf",
    ]
    chk = CheckerConfig(path="/bin/chk", name="chk")
    assert chk.argv("a.cnf", "p.drat") == ["/bin/chk", "a.cnf", "p.drat"]


def test_known_presets_cover_shipped_tools():
    assert {"varisat", "splr"} <= set(KNOWN_SOLVERS)
    assert {"rate", "drat-trim"} <= set(KNOWN_CHECKERS)
    # the rate preset must keep drat-trim-compatible deletion semantics
    assert "--skip-unit-deletions" in KNOWN_CHECKERS["rate"]["args"]


def _stub(tmp_path, name: str, script: str) -> str:
    path = tmp_path / name
    path.write_text(f"#!/bin/sh\n{script}\n")
    path.chmod(path.stat().st_mode | stat.S_IEXEC)
    return str(path)


def test_discover_solver_precedence(tmp_path, monkeypatch):
    stub = _stub(tmp_path, "mysolver", "echo s UNKNOWN")
    assert discover_solver(stub).path == stub

    monkeypatch.setenv("HOLESAT_SOLVER", stub)
    assert discover_solver().path == stub
    monkeypatch.delenv("HOLESAT_SOLVER")

    cfg_file = tmp_path / "holesat.json"
    cfg_file.write_text(json.dumps({"solver": {"path": stub, "name": "custom"}}))
    monkeypatch.setenv("HOLESAT_CONFIG", str(cfg_file))
    found = discover_solver()
    assert found.path == stub and found.name == "custom"


def test_discover_solver_missing_is_clear_error(tmp_path, monkeypatch):
    monkeypatch.setenv("PATH", str(tmp_path))
    monkeypatch.delenv("HOLESAT_SOLVER", raising=False)
    monkeypatch.setenv("HOLESAT_CONFIG", str(tmp_path / "absent.json"))
    with pytest.raises(SolverError, match="no SAT solver"):
        discover_solver()
    with pytest.raises(SolverError, match="no proof checker"):
        discover_checker()
    with pytest.raises(SolverError, match="does not exist"):
        discover_solver(str(tmp_path / "missing-binary"))


def test_config_defaults(tmp_path, monkeypatch):
    monkeypatch.setenv("HOLESAT_CONFIG", str(tmp_path / "none.json"))
    assert load_config() == {}
    monkeypatch.setenv("HOLESAT_TIMEOUT", "12.5")
    assert default_timeout() == 12.5
    monkeypatch.setenv("HOLESAT_WORKERS", "3")
    assert default_workers() == 3


# --- error classification -------------------------------------------------

def _tiny_cnf(tmp_path):
    cnf = tmp_path / "tiny.cnf"
    cnf.write_text("p cnf 1 1\n1 0\n")
    return cnf


def test_crash_vs_unparsable_vs_timeout(tmp_path):
    cnf = _tiny_cnf(tmp_path)
    crash = SolverConfig(path=_stub(tmp_path, "crash", "echo boom >&2; exit 3"), name="crash")
    rep = run_solver(cnf, crash, timeout=5)
    assert rep.verdict == "UNKNOWN" and "solver crash (exit 3)" in rep.detail

    garbled = SolverConfig(path=_stub(tmp_path, "garbled", "echo hello; exit 10"), name="g")
    rep = run_solver(cnf, garbled, timeout=5)
    assert rep.verdict == "UNKNOWN" and "unparsable solver output" in rep.detail

    slow = SolverConfig(path=_stub(tmp_path, "slow", "sleep 5; echo s UNKNOWN"), name="slow")
    rep = run_solver(cnf, slow, timeout=0.2)
    assert rep.verdict == "UNKNOWN" and "timeout" in rep.detail

    with pytest.raises(SolverError, match="failed to launch"):
        run_solver(cnf, SolverConfig(path=str(tmp_path / "gone"), name="gone"), timeout=5)


def test_stubbed_sat_roundtrip(tmp_path):
    cnf = _tiny_cnf(tmp_path)
    sat = SolverConfig(
        path=_stub(tmp_path, "sat", "echo s SATISFIABLE; echo v 1 0"), name="sat"
    )
    rep = run_solver(cnf, sat, timeout=5)
    assert rep.verdict == "SAT" and rep.model == {1: True}
    assert rep.certificate_path is None


def test_normalize_certificate_strips_percent_header(tmp_path):
    plain = tmp_path / "plain.drat"
    plain.write_text("1 2 0\nd 1 2 0\n")
    assert normalize_certificate(plain) == str(plain)
    decorated = tmp_path / "decorated.drat"
    decorated.write_text("%SOME HEADER\n1 2 0\n")
    cleaned = normalize_certificate(decorated)
    assert cleaned.endswith(".clean")
    assert open(cleaned).read() == "1 2 0\n"


# --- decoding and model verification --------------------------------------

def _canonical(seed: int, n: int):
    s = canonicalize(random_point_set(n, random.Random(seed)))
    return s, chirotope(s)


@pytest.mark.parametrize("orient", ["compact", "explicit"])
def test_decode_model_roundtrips_chirotope(orient):
    p = HoleProblem(n=7, mode="forbid-hole", sizes=(5,), orient_vars=orient)
    _, sig = _canonical(11, 7)
    inst = build_instance(p)
    assignment = assignment_from_chirotope(sig, p)
    assert decode_model(assignment, inst.registry) == sig


def test_verify_model_accepts_structure_free_set():
    p = HoleProblem(n=6, mode="forbid-hole", sizes=(6,))
    for seed in range(30):
        s, sig = _canonical(seed, 6)
        if not enumerate_holes(s, 6):
            result = verify_model(sig, p)
            assert result.passed, result.description
            return
    pytest.fail("no 6-point set without a 6-hole found")


def test_verify_model_rejects_forbidden_structure():
    p = HoleProblem(n=7, mode="forbid-hole", sizes=(3,))
    # every point set has 3-holes, so any decoded chirotope must fail
    _, sig = _canonical(5, 7)
    result = verify_model(sig, p)
    assert not result.passed
    assert result.counterexample is not None


def test_verify_model_rejects_wrong_size():
    p = HoleProblem(n=8, mode="forbid-hole", sizes=(5,))
    _, sig = _canonical(5, 7)
    assert not verify_model(sig, p).passed


def test_report_serialization(tmp_path):
    cnf = _tiny_cnf(tmp_path)
    sat = SolverConfig(
        path=_stub(tmp_path, "sat2", "echo s SATISFIABLE; echo v 1 0"), name="sat2"
    )
    rep = run_solver(cnf, sat, timeout=5)
    text = rep.to_text()
    assert "verdict: SAT" in text and "sat2" in text
    out = tmp_path / "report.json"
    rep.write_summary(out)
    data = json.loads(out.read_text())
    assert data["verdict"] == "SAT" and data["solver"] == "sat2"


# --- real solvers ---------------------------------------------------------

@requires_solver
@pytest.mark.solver
def test_solve_instance_sat_end_to_end(tmp_path):
    p = HoleProblem(n=5, mode="two-disjoint-holes", sizes=(3, 3))
    rep = solve_instance(build_instance(p), workdir=tmp_path)
    assert rep.verdict == "SAT"
    assert rep.verification == "passed"


@requires_solver
@pytest.mark.solver
def test_solve_instance_unsat_with_certificate(tmp_path):
    p = HoleProblem(n=6, mode="two-disjoint-holes", sizes=(3, 3))
    checker = discover_checker() if HAVE_CHECKER else None
    rep = solve_instance(
        build_instance(p), checker=checker, workdir=tmp_path, want_proof=True
    )
    assert rep.verdict == "UNSAT"
    assert rep.verification == ("passed" if HAVE_CHECKER else "skipped")
    assert rep.certificate_path and os.path.exists(rep.certificate_path)


@requires_solver
@pytest.mark.solver
def test_explicit_orientation_model_decodes(tmp_path):
    p = HoleProblem(n=7, mode="forbid-hole", sizes=(5,), orient_vars="explicit")
    rep = solve_instance(build_instance(p), workdir=tmp_path)
    assert rep.verdict == "SAT" and rep.verification == "passed"


@requires_solver
@pytest.mark.solver
def test_run_batch_merges_reports(tmp_path):
    problems = [
        HoleProblem(n=5, mode="forbid-hole", sizes=(4,)),
        HoleProblem(n=6, mode="forbid-gon", sizes=(4,)),
    ]
    reports = run_batch([build_instance(p) for p in problems], workdir=tmp_path, workers=2)
    assert set(reports) == {p.key() for p in problems}
    assert all(r.verdict in ("SAT", "UNSAT") for r in reports.values())


@requires_solver
@requires_checker
@pytest.mark.solver
def test_both_solver_families_agree(tmp_path):
    # every configured preset found on PATH must agree on a small pair
    available = [
        name for name in KNOWN_SOLVERS
        if __import__("shutil").which(name) is not None
    ]
    if len(available) < 2:
        pytest.skip("fewer than two solvers installed")
    sat_p = build_instance(HoleProblem(n=9, mode="forbid-hole", sizes=(5,)))
    unsat_p = build_instance(HoleProblem(n=10, mode="forbid-hole", sizes=(5,)))
    for name in available:
        cfg = discover_solver(name)
        rep_sat = solve_instance(sat_p, cfg, workdir=tmp_path / name)
        rep_unsat = solve_instance(
            unsat_p, cfg, workdir=tmp_path / name, want_proof=True
        )
        assert rep_sat.verdict == "SAT" and rep_sat.verification == "passed"
        assert rep_unsat.verdict == "UNSAT"
        assert rep_unsat.verification == "passed"
