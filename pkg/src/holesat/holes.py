"""Detection and enumeration of k-gons, k-holes, and disjoint hole tuples.

All predicates work on exact coordinates through :meth:`PointSet.chi`;
nothing here assumes a canonical labeling. A *k-gon* is a subset in convex
position; a *k-hole* is a k-gon whose hull contains no other point of the
set. A 2-subset is always a (degenerate) hole under general position.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .geometry import POSITIVE, PointSet

DisjointMode = Literal["disjoint", "interior-disjoint"]


@dataclass(frozen=True)
class Hole:
    """A subset of point indices tagged as gon or hole."""

    indices: tuple[int, ...]
    kind: str = "hole"

    def __post_init__(self) -> None:
        xs = tuple(sorted(self.indices))
        if len(set(xs)) != len(xs):
            raise ValueError(f"duplicate indices in {xs}")
        object.__setattr__(self, "indices", xs)


def _normalize(s: PointSet, x: Iterable[int]) -> tuple[int, ...]:
    xs = tuple(sorted(x))
    if len(set(xs)) != len(xs):
        raise ValueError(f"duplicate indices in {xs}")
    if xs and (xs[0] < 0 or xs[-1] >= len(s)):
        raise IndexError(f"index out of range in {xs}")
    return xs


def in_triangle(s: PointSet, i: int, a: int, b: int, c: int) -> bool:
    """True iff point i lies strictly inside triangle (a, b, c)."""
    return (
        s.chi(a, b, i) == s.chi(a, b, c)
        and s.chi(b, c, i) == s.chi(b, c, a)
        and s.chi(c, a, i) == s.chi(c, a, b)
    )


def is_gon(s: PointSet, x: Iterable[int]) -> bool:
    """True iff the subset is in convex position."""
    xs = _normalize(s, x)
    if len(xs) < 3:
        raise ValueError("a gon needs at least 3 points")
    for i in xs:
        others = [j for j in xs if j != i]
        for a, b, c in itertools.combinations(others, 3):
            if in_triangle(s, i, a, b, c):
                return False
    return True


def hull_order(s: PointSet, x: Iterable[int]) -> list[int]:
    """Vertices of conv(x) in counterclockwise order.

    Members of x strictly inside the hull are dropped, so the result works
    for arbitrary subsets, not only gons.
    """
    xs = _normalize(s, x)
    if len(xs) <= 2:
        return list(xs)
    vertices = [
        i
        for i in xs
        if not any(
            in_triangle(s, i, a, b, c)
            for a, b, c in itertools.combinations([j for j in xs if j != i], 3)
        )
    ]
    anchor = min(vertices, key=lambda i: s.points[i])
    rest = [i for i in vertices if i != anchor]
    rest.sort(
        key=functools.cmp_to_key(lambda i, j: -s.chi(anchor, i, j))
    )
    return [anchor] + rest


def strictly_inside_hull(s: PointSet, hull_ccw: Sequence[int], i: int) -> bool:
    """True iff point i lies strictly inside the CCW-ordered convex polygon."""
    if len(hull_ccw) < 3 or i in hull_ccw:
        return False
    m = len(hull_ccw)
    return all(
        s.chi(hull_ccw[j], hull_ccw[(j + 1) % m], i) == POSITIVE for j in range(m)
    )


def is_hole(s: PointSet, x: Iterable[int]) -> bool:
    """True iff x is a gon and conv(x) contains no other point of s.

    For |x| = 2 the condition is vacuous under general position.
    """
    xs = _normalize(s, x)
    if len(xs) < 2:
        raise ValueError("a hole needs at least 2 points")
    if len(xs) == 2:
        return True
    if len(xs) > 3 and not is_gon(s, xs):
        return False
    hull = hull_order(s, xs)
    outside = set(xs)
    xlo = min(s.points[i].x for i in xs)
    xhi = max(s.points[i].x for i in xs)
    for i in range(len(s)):
        if i in outside:
            continue
        p = s.points[i]
        if p.x < xlo or p.x > xhi:
            continue
        if strictly_inside_hull(s, hull, i):
            return False
    return True


def three_hole_table(s: PointSet) -> frozenset[tuple[int, int, int]]:
    """All 3-subsets whose triangle is empty (the 3-holes)."""
    empty = []
    for t in itertools.combinations(range(len(s)), 3):
        a, b, c = t
        xlo = min(s.points[i].x for i in t)
        xhi = max(s.points[i].x for i in t)
        for i in range(len(s)):
            if i in t:
                continue
            p = s.points[i]
            if p.x < xlo or p.x > xhi:
                continue
            if in_triangle(s, i, a, b, c):
                break
        else:
            empty.append(t)
    return frozenset(empty)


def enumerate_holes(s: PointSet, k: int) -> list[Hole]:
    """All k-holes in lexicographic index order.

    For k >= 4 this uses the triple-emptiness characterization (a subset is a
    hole iff every 3-subset is a 3-hole), which agrees with :func:`is_hole`;
    the test suite cross-checks the two paths.
    """
    if not 2 <= k <= len(s):
        raise ValueError(f"hole size {k} out of range for n={len(s)}")
    idx = range(len(s))
    if k == 2:
        return [Hole(t) for t in itertools.combinations(idx, 2)]
    table = three_hole_table(s)
    if k == 3:
        return [Hole(t) for t in sorted(table)]
    holes = []
    for xs in itertools.combinations(idx, k):
        if all(t in table for t in itertools.combinations(xs, 3)):
            holes.append(Hole(xs))
    return holes


def hulls_disjoint(s: PointSet, x1: Iterable[int], x2: Iterable[int]) -> bool:
    """True iff conv(x1) and conv(x2) are disjoint.

    Decided by the existence of a separating pair: points a in x1, b in x2
    such that every other point of x1 is strictly on one side of line a->b
    and every other point of x2 strictly on the other.
    """
    a1 = _normalize(s, x1)
    a2 = _normalize(s, x2)
    if not a1 or not a2:
        raise ValueError("subsets must be nonempty")
    if set(a1) & set(a2):
        return False
    # Quick accept: disjoint coordinate ranges give an axis-parallel separator.
    for axis in (0, 1):
        if max(s.points[i][axis] for i in a1) < min(s.points[i][axis] for i in a2):
            return True
        if max(s.points[i][axis] for i in a2) < min(s.points[i][axis] for i in a1):
            return True
    for a in a1:
        for b in a2:
            if _separates(s, a, b, a1, a2):
                return True
    return False


def _separates(s: PointSet, a: int, b: int, x1: Sequence[int], x2: Sequence[int]) -> bool:
    side = 0
    for x in x1:
        if x == a:
            continue
        c = s.chi(a, b, x)
        if side == 0:
            side = c
        elif c != side:
            return False
    for y in x2:
        if y == b:
            continue
        c = s.chi(a, b, y)
        if side == 0:
            side = -c
        elif c == side:
            return False
    return True


def hulls_interior_disjoint(s: PointSet, x1: Iterable[int], x2: Iterable[int]) -> bool:
    """True iff the open interiors of conv(x1) and conv(x2) are disjoint.

    Shared vertices (up to two) and shared edges are allowed. Decided by
    exact open-polygon intersection: three or more shared vertices, a vertex
    of one hull strictly inside the other, or a proper edge crossing all
    witness overlapping interiors; under general position nothing else can.
    Subsets with fewer than 3 points have empty planar interior.
    """
    a1 = _normalize(s, x1)
    a2 = _normalize(s, x2)
    if not a1 or not a2:
        raise ValueError("subsets must be nonempty")
    if len(a1) < 3 or len(a2) < 3:
        return True
    if len(set(a1) & set(a2)) >= 3:
        return False
    h1 = hull_order(s, a1)
    h2 = hull_order(s, a2)
    if any(strictly_inside_hull(s, h2, i) for i in h1):
        return False
    if any(strictly_inside_hull(s, h1, i) for i in h2):
        return False
    m1, m2 = len(h1), len(h2)
    for i in range(m1):
        p, q = h1[i], h1[(i + 1) % m1]
        for j in range(m2):
            u, v = h2[j], h2[(j + 1) % m2]
            if _proper_cross(s, p, q, u, v):
                return False
    return True


def _proper_cross(s: PointSet, p: int, q: int, u: int, v: int) -> bool:
    """True iff segments pq and uv cross at interior points of both."""
    if len({p, q, u, v}) < 4:
        return False
    return (
        s.chi(p, q, u) != s.chi(p, q, v)
        and s.chi(u, v, p) != s.chi(u, v, q)
    )


def hull_vertices(s: PointSet, x: Iterable[int] | None = None) -> list[int]:
    """Sorted indices of the extremal points of x (default: the whole set)."""
    xs = _normalize(s, range(len(s)) if x is None else x)
    return sorted(hull_order(s, xs))


def find_disjoint_tuple(
    s: PointSet,
    sizes: Sequence[int],
    mode: DisjointMode = "disjoint",
) -> list[Hole] | None:
    """Pairwise (interior-)disjoint holes of the requested sizes, or None.

    The search is exhaustive: holes of each size are enumerated, pairwise
    compatibility is precomputed as bitmasks, and tuples are searched with
    running candidate masks (equal sizes constrained to increasing position
    to skip symmetric duplicates). A None result is therefore a proof of
    absence, usable as a lower-bound witness.
    """
    if not sizes:
        raise ValueError("need at least one size")
    minimum = 3 if mode == "interior-disjoint" else 2
    if any(k < minimum for k in sizes):
        raise ValueError(f"sizes must be >= {minimum} in {mode} mode")
    if mode == "disjoint":
        compatible = lambda xa, xb: hulls_disjoint(s, xa, xb)
    elif mode == "interior-disjoint":
        compatible = lambda xa, xb: hulls_interior_disjoint(s, xa, xb)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    by_size = {k: enumerate_holes(s, k) for k in sorted(set(sizes))}
    return search_disjoint_tuple(by_size, sizes, compatible)


def search_disjoint_tuple(
    by_size: dict[int, list[Hole]],
    sizes: Sequence[int],
    compatible,
) -> list[Hole] | None:
    """Exhaustive tuple search over precomputed hole classes.

    ``compatible(xa, xb)`` decides whether two index tuples may coexist in
    the result; it is assumed symmetric. Shared by the coordinate-based and
    the orientation-based searches.
    """
    if any(not by_size[k] for k in sizes):
        return None
    class_of = [by_size[k] for k in sizes]

    # compat[(i, j)][u] = bitmask over class j of holes compatible with
    # hole u of class i; computed once per unordered size pair.
    mask_cache: dict[tuple[int, int], list[int]] = {}

    def cross_masks(i: int, j: int) -> list[int]:
        key = (sizes[i], sizes[j])
        if key not in mask_cache:
            rows = []
            cj = by_size[sizes[j]]
            for hu in by_size[sizes[i]]:
                row = 0
                for idx, hv in enumerate(cj):
                    if compatible(hu.indices, hv.indices):
                        row |= 1 << idx
                rows.append(row)
            mask_cache[key] = rows
            if key[0] == key[1]:
                mask_cache[(key[1], key[0])] = rows
            else:
                transposed = [0] * len(cj)
                for u, row in enumerate(rows):
                    while row:
                        low = row & -row
                        transposed[low.bit_length() - 1] |= 1 << u
                        row ^= low
                mask_cache[(key[1], key[0])] = transposed
        return mask_cache[(sizes[i], sizes[j])]

    chosen: list[int] = []

    def dfs(pos: int, candidates: list[int]) -> list[Hole] | None:
        if pos == len(sizes):
            return [class_of[i][chosen[i]] for i in range(len(sizes))]
        mask = candidates[pos]
        while mask:
            low = mask & -mask
            u = low.bit_length() - 1
            mask ^= low
            chosen.append(u)
            nxt = list(candidates)
            ok = True
            for j in range(pos + 1, len(sizes)):
                nxt[j] &= cross_masks(pos, j)[u]
                if sizes[j] == sizes[pos]:
                    # skip symmetric permutations of equal-size slots
                    nxt[j] &= ~((1 << (u + 1)) - 1)
                if nxt[j] == 0:
                    ok = False
                    break
            if ok:
                found = dfs(pos + 1, nxt)
                if found is not None:
                    return found
            chosen.pop()
        return None

    full = [(1 << len(c)) - 1 for c in class_of]
    return dfs(0, full)
