"""Shared fixtures: deterministic random point sets, solver availability."""

from __future__ import annotations

import os
import random

import pytest

from holesat.geometry import Point, PointSet, orient
from holesat.solver import SolverError, discover_checker, discover_solver


def _available(discover) -> bool:
    try:
        discover()
        return True
    except SolverError:
        return False


HAVE_SOLVER = _available(discover_solver)
HAVE_CHECKER = _available(discover_checker)

requires_solver = pytest.mark.skipif(not HAVE_SOLVER, reason="no SAT solver found")
requires_checker = pytest.mark.skipif(not HAVE_CHECKER, reason="no proof checker found")

RUN_LONG = os.environ.get("HOLESAT_RUN_LONG") == "1"


def pytest_collection_modifyitems(config, items):
    if RUN_LONG:
        return
    skip = pytest.mark.skip(reason="hour-scale target; set HOLESAT_RUN_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def random_point_set(n: int, rng: random.Random, span: int = 1000) -> PointSet:
    """Uniform integer points in general position, deterministically seeded."""
    points: list[Point] = []
    while len(points) < n:
        cand = Point(rng.randint(-span, span), rng.randint(-span, span))
        if any(cand == p for p in points):
            continue
        if any(
            orient(points[i], points[j], cand) == 0
            for i in range(len(points))
            for j in range(i + 1, len(points))
        ):
            continue
        points.append(cand)
    return PointSet(points)
