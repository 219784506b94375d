"""Erdős–Szekeres-type questions about k-gons and k-holes as SAT instances.

The package encodes "does an n-point set avoid this structure?" questions
(k-gons, k-holes, pairs of disjoint or interior-disjoint holes, hole
counts) over abstract order types as CNF, drives external SAT solvers and
DRAT proof checkers over the instances, and independently verifies both
geometric witnesses and decoded models with exact integer arithmetic.
"""

from .encoder import CnfInstance, HoleProblem, build_instance
from .geometry import Point, PointSet, Signotope, chirotope, read_points, write_points
from .solver import SolveReport, solve_instance

__version__ = "0.1.0"

__all__ = [
    "CnfInstance",
    "HoleProblem",
    "Point",
    "PointSet",
    "Signotope",
    "SolveReport",
    "build_instance",
    "chirotope",
    "read_points",
    "solve_instance",
    "write_points",
    "__version__",
]
