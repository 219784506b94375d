"""Simulated annealing over integer point sets to find lower-bound witnesses.

A :class:`SearchObjective` counts forbidden structures (k-holes, k-gons,
tuples of pairwise disjoint holes); a point set with objective zero is a
witness for the corresponding lower bound. The annealer perturbs one point
at a time with a geometrically cooling step size, rejects any move that
breaks general position, and is fully deterministic for a given seed.
Returned witnesses are re-verified from scratch with exact arithmetic
before being handed back.
"""

from __future__ import annotations

import itertools
import logging
import math
import multiprocessing
import random
from dataclasses import dataclass

from .geometry import Point, PointSet, orient
from .holes import (
    enumerate_holes,
    hulls_disjoint,
    hulls_interior_disjoint,
    is_gon,
)

log = logging.getLogger("holesat.search")

DEFAULT_BOX = 10**6

_OBJECTIVE_MODES = (
    "two-disjoint-holes",
    "two-interior-disjoint-holes",
    "forbid-hole",
    "forbid-gon",
)


@dataclass(frozen=True)
class SearchObjective:
    """What to drive to zero: the count of forbidden structures.

    For the disjoint modes ``sizes`` may list any number of holes (pairs,
    triples, ...); for forbid-hole/forbid-gon it is a single (k,).
    """

    mode: str
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if self.mode not in _OBJECTIVE_MODES:
            raise ValueError(f"unknown objective mode {self.mode!r}")
        if self.mode in ("forbid-hole", "forbid-gon"):
            if len(self.sizes) != 1:
                raise ValueError(f"{self.mode} takes a single size")
        elif len(self.sizes) < 2:
            raise ValueError(f"{self.mode} needs at least two sizes")
        minimum = {
            "two-disjoint-holes": 2,
            "two-interior-disjoint-holes": 3,
            "forbid-hole": 3,
            "forbid-gon": 3,
        }[self.mode]
        if any(k < minimum for k in self.sizes):
            raise ValueError(f"sizes {self.sizes} below minimum {minimum}")

    def describe(self) -> str:
        if self.mode == "forbid-hole":
            return f"{self.sizes[0]}-holes"
        if self.mode == "forbid-gon":
            return f"{self.sizes[0]}-gons"
        flavor = "disjoint" if self.mode == "two-disjoint-holes" else "interior-disjoint"
        return f"{flavor} {'/'.join(map(str, self.sizes))}-hole tuples"


def count_gons(s: PointSet, k: int) -> int:
    n = len(s)
    if k == 3:
        return math.comb(n, 3)
    table = {
        q for q in itertools.combinations(range(n), 4) if is_gon(s, q)
    }
    if k == 4:
        return len(table)
    return sum(
        1
        for xs in itertools.combinations(range(n), k)
        if all(q in table for q in itertools.combinations(xs, 4))
    )


def _count_disjoint_tuples(s: PointSet, sizes, compatible) -> int:
    by_size = {k: enumerate_holes(s, k) for k in sorted(set(sizes))}
    if any(not by_size[k] for k in sizes):
        return 0
    classes = [by_size[k] for k in sizes]
    masks: dict[tuple[int, int], list[int]] = {}

    def cross(i: int, j: int) -> list[int]:
        key = (sizes[i], sizes[j])
        if key not in masks:
            rows = []
            cj = by_size[sizes[j]]
            for hu in by_size[sizes[i]]:
                row = 0
                for idx, hv in enumerate(cj):
                    if compatible(hu.indices, hv.indices):
                        row |= 1 << idx
                rows.append(row)
            masks[key] = rows
            if key[0] != key[1]:
                transposed = [0] * len(cj)
                for u, row in enumerate(rows):
                    while row:
                        low = row & -row
                        transposed[low.bit_length() - 1] |= 1 << u
                        row ^= low
                masks[(key[1], key[0])] = transposed
        return masks[(sizes[i], sizes[j])]

    total = 0

    def dfs(pos: int, candidates: list[int]) -> None:
        nonlocal total
        if pos == len(sizes) - 1:
            total += candidates[pos].bit_count()
            return
        mask = candidates[pos]
        while mask:
            low = mask & -mask
            u = low.bit_length() - 1
            mask ^= low
            nxt = list(candidates)
            dead = False
            for j in range(pos + 1, len(sizes)):
                nxt[j] &= cross(pos, j)[u]
                if sizes[j] == sizes[pos]:
                    nxt[j] &= ~((1 << (u + 1)) - 1)
                if nxt[j] == 0:
                    dead = True
                    break
            if not dead:
                dfs(pos + 1, nxt)

    dfs(0, [(1 << len(c)) - 1 for c in classes])
    return total


def objective_count(s: PointSet, obj: SearchObjective) -> int:
    """Exact number of forbidden structures in the point set."""
    if obj.mode == "forbid-hole":
        return len(enumerate_holes(s, obj.sizes[0]))
    if obj.mode == "forbid-gon":
        return count_gons(s, obj.sizes[0])
    if obj.mode == "two-disjoint-holes":
        compatible = lambda xa, xb: hulls_disjoint(s, xa, xb)
    else:
        compatible = lambda xa, xb: hulls_interior_disjoint(s, xa, xb)
    return _count_disjoint_tuples(s, obj.sizes, compatible)


def _general_position_ok(points: list[Point], moved: int) -> bool:
    p = points[moved]
    for i, a in enumerate(points):
        if i == moved:
            continue
        if a == p:
            return False
        for b in points[i + 1 :]:
            if b is p:
                continue
            if orient(a, b, p) == 0:
                return False
    return True


def _random_general_position(
    n: int, rng: random.Random, box: int
) -> list[Point]:
    span = min(box, 4 * n * n)
    points: list[Point] = []
    while len(points) < n:
        cand = Point(rng.randint(-span, span), rng.randint(-span, span))
        points.append(cand)
        if not _general_position_ok(points, len(points) - 1):
            points.pop()
    return points


def local_search(
    n: int,
    obj: SearchObjective,
    seed: int = 0,
    budget: int = 20000,
    box: int = DEFAULT_BOX,
    epoch: int = 250,
    t_factor: float = 0.5,
) -> PointSet | None:
    """Anneal an n-point set until the objective hits zero, or give up.

    ``budget`` bounds the number of proposed moves. The temperature starts
    at ``t_factor`` times the initial objective; temperature and step size
    decay geometrically per epoch, scaled so the cooldown spans the whole
    budget. Moves breaking general position are rejected outright.
    Deterministic for fixed arguments.
    """
    if n < max(obj.sizes):
        raise ValueError(f"n={n} below structure size {max(obj.sizes)}")
    rng = random.Random(seed)
    span = min(box, 4 * n * n)
    points = _random_general_position(n, rng, box)
    current = objective_count(PointSet(points), obj)
    if current == 0:
        return _reverify(points, obj)
    best = current
    best_points = list(points)
    last_improvement = 0
    start_temp = temperature = max(1.0, t_factor * current)
    start_step = step = max(4, span // 2)
    epochs = max(1, budget // epoch)
    t_decay = (0.05 / temperature) ** (1.0 / epochs)
    step_decay = (2.0 / step) ** (1.0 / epochs)
    for proposal in range(budget):
        if proposal and proposal % epoch == 0:
            temperature = max(0.05, temperature * t_decay)
            step = max(2, int(step * step_decay))
            log.info(
                "seed=%d epoch=%d T=%.2f step=%d current=%d best=%d",
                seed, proposal // epoch, temperature, step, current, best,
            )
        if proposal - last_improvement >= 8 * epoch:
            # stagnant: back to the best configuration seen, reheat
            points = list(best_points)
            current = best
            temperature = max(temperature, start_temp / 2)
            step = max(step, start_step // 2)
            last_improvement = proposal
        idx = rng.randrange(n)
        old = points[idx]
        if rng.random() < 0.1:
            nx = rng.randint(-span, span)
            ny = rng.randint(-span, span)
        else:
            nx = max(-box, min(box, old.x + rng.randint(-step, step)))
            ny = max(-box, min(box, old.y + rng.randint(-step, step)))
        if (nx, ny) == (old.x, old.y):
            continue
        points[idx] = Point(nx, ny)
        if not _general_position_ok(points, idx):
            points[idx] = old
            continue
        value = objective_count(PointSet(points), obj)
        delta = value - current
        if delta <= 0 or rng.random() < math.exp(-delta / temperature):
            current = value
            if value < best:
                best = value
                best_points = list(points)
                last_improvement = proposal
            if current == 0:
                return _reverify(points, obj)
        else:
            points[idx] = old
    return None


def _reverify(points: list[Point], obj: SearchObjective) -> PointSet:
    # fresh construction re-checks general position; recount from scratch
    witness = PointSet([(p.x, p.y) for p in points])
    count = objective_count(witness, obj)
    if count != 0:
        raise AssertionError(f"witness re-verification failed: {count} left")
    return witness


def _search_job(args) -> tuple[int, list[tuple[int, int]] | None]:
    n, obj, seed, budget, box = args
    found = local_search(n, obj, seed=seed, budget=budget, box=box)
    if found is None:
        return seed, None
    return seed, [(p.x, p.y) for p in found.points]


def search_witness(
    n: int,
    obj: SearchObjective,
    seeds=range(8),
    budget: int = 20000,
    box: int = DEFAULT_BOX,
    workers: int = 4,
) -> tuple[PointSet, int] | None:
    """Parallel restarts over the given seeds; first success wins.

    Returns (witness, winning seed) or None if every restart exhausts its
    budget.
    """
    jobs = [(n, obj, seed, budget, box) for seed in seeds]
    if workers <= 1 or len(jobs) == 1:
        for job in jobs:
            seed, coords = _search_job(job)
            if coords is not None:
                return PointSet(coords), seed
        return None
    # Pool (not ProcessPoolExecutor) so the winner can terminate the losers
    # instead of waiting out their budgets.
    with multiprocessing.Pool(processes=min(workers, len(jobs))) as pool:
        for seed, coords in pool.imap_unordered(_search_job, jobs):
            if coords is not None:
                pool.terminate()
                return PointSet(coords), seed
    return None
