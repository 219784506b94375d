"""Gon, hole, and disjointness semantics evaluated on a Signotope alone.

Mirrors the coordinate-based predicates of :mod:`holesat.holes`, but every
decision is made from triple orientations, so the predicates apply to
satisfying assignments of the CNF encodings even when no realizing point
set is known. Disjointness is decided through separator pairs instead of
polygon intersection, which keeps the two modules independent oracles; the
test suite cross-checks them on signotopes derived from actual point sets.

Precondition throughout: ``sig`` satisfies the signotope axioms
(``check_signotope(sig) == []``). Under the axioms a label contained in a
triangle lies strictly between the triangle's least and greatest label
(any other position forces two sign changes in some 4-tuple), which the
table builders exploit.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .geometry import NEGATIVE, POSITIVE, Signotope
from .holes import DisjointMode, Hole, search_disjoint_tuple


def _normalize(sig: Signotope, x: Iterable[int]) -> tuple[int, ...]:
    xs = tuple(sorted(x))
    if len(set(xs)) != len(xs):
        raise ValueError(f"duplicate indices in {xs}")
    if xs and (xs[0] < 0 or xs[-1] >= sig.n):
        raise IndexError(f"index out of range in {xs}")
    return xs


def in_triangle(sig: Signotope, i: int, a: int, b: int, c: int) -> bool:
    """True iff label i lies inside triangle (a, b, c) of the signotope."""
    return (
        sig.chi(a, b, i) == sig.chi(a, b, c)
        and sig.chi(b, c, i) == sig.chi(b, c, a)
        and sig.chi(c, a, i) == sig.chi(c, a, b)
    )


def is_gon(sig: Signotope, x: Iterable[int]) -> bool:
    """True iff the label set is in convex position."""
    xs = _normalize(sig, x)
    if len(xs) < 3:
        raise ValueError("a gon needs at least 3 points")
    for i in xs:
        others = [j for j in xs if j != i]
        for a, b, c in itertools.combinations(others, 3):
            if in_triangle(sig, i, a, b, c):
                return False
    return True


def is_hole(sig: Signotope, x: Iterable[int]) -> bool:
    """True iff x is a gon and no other label lies inside a triangle of x.

    Direct definition (convex position plus triangle emptiness over all
    members); :func:`enumerate_holes` takes the triple-table path instead,
    and the two are cross-checked in the test suite.
    """
    xs = _normalize(sig, x)
    if len(xs) < 2:
        raise ValueError("a hole needs at least 2 points")
    if len(xs) == 2:
        return True
    if len(xs) > 3 and not is_gon(sig, xs):
        return False
    members = set(xs)
    for a, b, c in itertools.combinations(xs, 3):
        for i in range(a + 1, c):
            if i not in members and in_triangle(sig, i, a, b, c):
                return False
    return True


def three_hole_table(sig: Signotope) -> frozenset[tuple[int, int, int]]:
    """All label triples whose triangle contains no further label."""
    empty = []
    for a, b, c in itertools.combinations(range(sig.n), 3):
        if not any(
            in_triangle(sig, i, a, b, c) for i in range(a + 1, c) if i != b
        ):
            empty.append((a, b, c))
    return frozenset(empty)


def four_gon_table(sig: Signotope) -> frozenset[tuple[int, int, int, int]]:
    """All label 4-tuples in convex position."""
    return frozenset(
        q
        for q in itertools.combinations(range(sig.n), 4)
        if is_gon(sig, q)
    )


def enumerate_holes(sig: Signotope, k: int) -> list[Hole]:
    """All k-holes of the signotope in lexicographic index order.

    For k >= 4 a subset is a hole iff every 3-subset is a 3-hole, the same
    characterization the coordinate-based enumerator uses.
    """
    if not 2 <= k <= sig.n:
        raise ValueError(f"hole size {k} out of range for n={sig.n}")
    idx = range(sig.n)
    if k == 2:
        return [Hole(t) for t in itertools.combinations(idx, 2)]
    table = three_hole_table(sig)
    if k == 3:
        return [Hole(t) for t in sorted(table)]
    holes = []
    for xs in itertools.combinations(idx, k):
        if all(t in table for t in itertools.combinations(xs, 3)):
            holes.append(Hole(xs))
    return holes


def enumerate_gons(sig: Signotope, k: int) -> list[Hole]:
    """All k-gons of the signotope in lexicographic index order.

    For k >= 5 a subset is in convex position iff every 4-subset is.
    """
    if not 3 <= k <= sig.n:
        raise ValueError(f"gon size {k} out of range for n={sig.n}")
    idx = range(sig.n)
    if k == 3:
        return [Hole(t, kind="gon") for t in itertools.combinations(idx, 3)]
    table = four_gon_table(sig)
    if k == 4:
        return [Hole(t, kind="gon") for t in sorted(table)]
    gons = []
    for xs in itertools.combinations(idx, k):
        if all(q in table for q in itertools.combinations(xs, 4)):
            gons.append(Hole(xs, kind="gon"))
    return gons


def holes_disjoint(sig: Signotope, x1: Iterable[int], x2: Iterable[int]) -> bool:
    """True iff a separating pair a in x1, b in x2 exists.

    Every other label of x1 must be strictly on one side of the oriented
    line a->b and every other label of x2 strictly on the other. For
    realizable signotopes this matches disjointness of the convex hulls
    (a separating line can be rotated onto an inner common tangent).
    """
    a1 = _normalize(sig, x1)
    a2 = _normalize(sig, x2)
    if not a1 or not a2:
        raise ValueError("subsets must be nonempty")
    if set(a1) & set(a2):
        return False
    for a in a1:
        for b in a2:
            if _separates(sig, a, b, a1, a2):
                return True
    return False


def _separates(
    sig: Signotope, a: int, b: int, x1: Sequence[int], x2: Sequence[int]
) -> bool:
    side = 0
    for x in x1:
        if x == a:
            continue
        c = sig.chi(a, b, x)
        if side == 0:
            side = c
        elif c != side:
            return False
    for y in x2:
        if y == b:
            continue
        c = sig.chi(a, b, y)
        if side == 0:
            side = -c
        elif c == side:
            return False
    return True


def holes_interior_disjoint(
    sig: Signotope, x1: Iterable[int], x2: Iterable[int]
) -> bool:
    """True iff a weakly separating pair exists.

    The pair (a, b) is drawn from the union of the two label sets and only
    labels outside {a, b} are side-tested, so the separator may run through
    a shared vertex or along a shared edge. For realizable signotopes this
    matches disjointness of the open polygon interiors: a line separating
    the interiors can be rotated until it passes through two of the points.
    """
    a1 = _normalize(sig, x1)
    a2 = _normalize(sig, x2)
    if len(a1) < 3 or len(a2) < 3:
        raise ValueError("interior-disjointness needs at least 3 points each")
    if len(set(a1) & set(a2)) >= 3:
        return False
    union = sorted(set(a1) | set(a2))
    rest1 = {a: [x for x in a1 if x != a] for a in union}
    rest2 = {b: [x for x in a2 if x != b] for b in union}
    for a in union:
        for b in union:
            if a == b:
                continue
            t1 = [x for x in rest1[a] if x != b]
            t2 = [x for x in rest2[b] if x != a]
            if all(sig.chi(a, b, x) == POSITIVE for x in t1) and all(
                sig.chi(a, b, x) == NEGATIVE for x in t2
            ):
                return True
    return False


def find_disjoint_tuple(
    sig: Signotope,
    sizes: Sequence[int],
    mode: DisjointMode = "disjoint",
) -> list[Hole] | None:
    """Pairwise (interior-)disjoint holes of the requested sizes, or None.

    Same exhaustive search as the coordinate-based version, driven by the
    orientation-only predicates of this module.
    """
    if not sizes:
        raise ValueError("need at least one size")
    minimum = 3 if mode == "interior-disjoint" else 2
    if any(k < minimum for k in sizes):
        raise ValueError(f"sizes must be >= {minimum} in {mode} mode")
    if mode == "disjoint":
        compatible = lambda xa, xb: holes_disjoint(sig, xa, xb)
    elif mode == "interior-disjoint":
        compatible = lambda xa, xb: holes_interior_disjoint(sig, xa, xb)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    by_size = {k: enumerate_holes(sig, k) for k in sorted(set(sizes))}
    return search_disjoint_tuple(by_size, sizes, compatible)
