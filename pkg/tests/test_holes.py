"""Hole/gon analysis against brute-force oracles built from first principles."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holesat.geometry import Point, PointSet, orient
from holesat.holes import (
    Hole,
    enumerate_holes,
    find_disjoint_tuple,
    hull_order,
    hull_vertices,
    hulls_disjoint,
    hulls_interior_disjoint,
    in_triangle,
    is_gon,
    is_hole,
    strictly_inside_hull,
    three_hole_table,
)

from conftest import random_point_set


# --- independent oracles -------------------------------------------------

def oracle_in_triangle(s: PointSet, i: int, tri) -> bool:
    a, b, c = (s.points[t] for t in tri)
    p = s.points[i]
    signs = {orient(a, b, p), orient(b, c, p), orient(c, a, p)}
    return 0 not in signs and len(signs) == 1


def monotone_chain(pts: list[Point]) -> list[Point]:
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out
    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def oracle_is_gon(s: PointSet, xs) -> bool:
    pts = [s.points[i] for i in xs]
    return len(monotone_chain(pts)) == len(pts)


def oracle_is_hole(s: PointSet, xs) -> bool:
    if not oracle_is_gon(s, xs):
        return False
    hull = monotone_chain([s.points[i] for i in xs])
    outside = [s.points[i] for i in range(len(s)) if i not in set(xs)]
    m = len(hull)
    for p in outside:
        if all(orient(hull[j], hull[(j + 1) % m], p) > 0 for j in range(m)):
            return False
    return True


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return (
        orient(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1, d2 = orient(a, b, c), orient(a, b, d)
    d3, d4 = orient(c, d, a), orient(c, d, b)
    if d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4):
        return True
    return any(_on_segment(*seg) for seg in ((a, b, c), (a, b, d), (c, d, a), (c, d, b)))


def _hull_loop(s: PointSet, xs) -> list[Point]:
    return monotone_chain([s.points[i] for i in xs])


def _point_in_closed_hull(hull: list[Point], p: Point) -> bool:
    m = len(hull)
    if m == 1:
        return p == hull[0]
    if m == 2:
        return _on_segment(hull[0], hull[1], p)
    return all(orient(hull[j], hull[(j + 1) % m], p) >= 0 for j in range(m))


def oracle_hulls_disjoint(s: PointSet, x1, x2) -> bool:
    h1, h2 = _hull_loop(s, x1), _hull_loop(s, x2)
    if any(_point_in_closed_hull(h2, p) for p in h1):
        return False
    if any(_point_in_closed_hull(h1, p) for p in h2):
        return False
    def edges(h):
        if len(h) == 1:
            return []
        if len(h) == 2:
            return [(h[0], h[1])]
        return [(h[j], h[(j + 1) % len(h)]) for j in range(len(h))]
    for a, b in edges(h1):
        for c, d in edges(h2):
            if _segments_touch(a, b, c, d):
                return False
    return True


def oracle_interior_disjoint(s: PointSet, x1, x2) -> bool:
    h1, h2 = _hull_loop(s, x1), _hull_loop(s, x2)

    def strictly_inside(hull, p):
        m = len(hull)
        return all(orient(hull[j], hull[(j + 1) % m], p) > 0 for j in range(m))

    if any(strictly_inside(h2, p) for p in h1):
        return False
    if any(strictly_inside(h1, p) for p in h2):
        return False
    m1, m2 = len(h1), len(h2)
    for j in range(m1):
        a, b = h1[j], h1[(j + 1) % m1]
        for k in range(m2):
            c, d = h2[k], h2[(k + 1) % m2]
            d1, d2 = orient(a, b, c), orient(a, b, d)
            d3, d4 = orient(c, d, a), orient(c, d, b)
            if d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4):
                return False
    return True


# --- tests ---------------------------------------------------------------

def test_hole_dataclass_sorts_and_validates():
    h = Hole((4, 1, 3))
    assert h.indices == (1, 3, 4)
    with pytest.raises(ValueError):
        Hole((1, 1, 2))


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_in_triangle_matches_sign_oracle(seed):
    s = random_point_set(7, random.Random(seed))
    for tri in itertools.combinations(range(7), 3):
        for i in range(7):
            if i in tri:
                continue
            assert in_triangle(s, i, *tri) == oracle_in_triangle(s, i, tri)


@given(st.integers(0, 10**6), st.integers(min_value=3, max_value=6))
@settings(max_examples=40, deadline=None)
def test_is_gon_matches_hull_oracle(seed, k):
    s = random_point_set(8, random.Random(seed))
    for xs in itertools.combinations(range(8), k):
        assert is_gon(s, xs) == oracle_is_gon(s, xs)


@given(st.integers(0, 10**6), st.integers(min_value=3, max_value=6))
@settings(max_examples=30, deadline=None)
def test_is_hole_matches_definition_oracle(seed, k):
    s = random_point_set(8, random.Random(seed))
    for xs in itertools.combinations(range(8), k):
        assert is_hole(s, xs) == oracle_is_hole(s, xs)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_enumerate_holes_agrees_with_direct_check(seed):
    s = random_point_set(9, random.Random(seed))
    for k in (2, 3, 4, 5):
        expected = {
            xs for xs in itertools.combinations(range(9), k)
            if k == 2 or is_hole(s, xs)
        }
        got = {h.indices for h in enumerate_holes(s, k)}
        assert got == expected


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_three_hole_table_is_exact(seed):
    s = random_point_set(8, random.Random(seed))
    table = three_hole_table(s)
    for tri in itertools.combinations(range(8), 3):
        assert (tri in table) == oracle_is_hole(s, tri)


@given(st.integers(0, 10**6), st.integers(min_value=3, max_value=6))
@settings(max_examples=30, deadline=None)
def test_hull_order_is_ccw_permutation(seed, k):
    s = random_point_set(9, random.Random(seed))
    xs = tuple(sorted(random.Random(seed + 1).sample(range(9), k)))
    order = hull_order(s, xs)
    assert sorted(order) == sorted(hull_vertices(s, xs))
    m = len(order)
    if m >= 3:
        for j in range(m):
            assert (
                orient(s.points[order[j]], s.points[order[(j + 1) % m]],
                       s.points[order[(j + 2) % m]]) > 0
            )


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_strictly_inside_hull_matches_oracle(seed):
    rng = random.Random(seed)
    s = random_point_set(8, rng)
    xs = tuple(sorted(rng.sample(range(8), 5)))
    hull = hull_order(s, xs)
    loop = [s.points[i] for i in hull]
    for i in range(8):
        if i in xs:
            continue
        expected = all(
            orient(loop[j], loop[(j + 1) % len(loop)], s.points[i]) > 0
            for j in range(len(loop))
        )
        assert strictly_inside_hull(s, hull, i) == expected


@given(st.integers(0, 10**6), st.sampled_from([(2, 2), (2, 4), (3, 3), (3, 4), (4, 4)]))
@settings(max_examples=40, deadline=None)
def test_hulls_disjoint_matches_brute_oracle(seed, sizes):
    rng = random.Random(seed)
    s = random_point_set(sizes[0] + sizes[1] + 2, rng)
    idx = list(range(len(s)))
    x1 = tuple(sorted(rng.sample(idx, sizes[0])))
    x2 = tuple(sorted(rng.sample([i for i in idx if i not in x1], sizes[1])))
    assert hulls_disjoint(s, x1, x2) == oracle_hulls_disjoint(s, x1, x2)


@given(st.integers(0, 10**6), st.sampled_from([(3, 3), (3, 4), (4, 4)]))
@settings(max_examples=40, deadline=None)
def test_interior_disjoint_matches_crossing_oracle(seed, sizes):
    rng = random.Random(seed)
    s = random_point_set(sizes[0] + sizes[1] + 1, rng)
    idx = list(range(len(s)))
    x1 = tuple(sorted(rng.sample(idx, sizes[0])))
    pool = [i for i in idx if i not in x1] + list(x1)
    x2 = tuple(sorted(set(rng.sample(pool, sizes[1]))))
    if len(x2) < 3 or len(set(x1) & set(x2)) > 2:
        return
    assert hulls_interior_disjoint(s, x1, x2) == oracle_interior_disjoint(s, x1, x2)
    if hulls_disjoint(s, x1, x2):
        assert hulls_interior_disjoint(s, x1, x2)


def test_shared_vertices_allowed_only_interior():
    # two triangles sharing an edge: interior-disjoint but not disjoint
    s = PointSet([(0, 0), (4, 1), (2, 3), (2, -3)])
    assert hulls_interior_disjoint(s, (0, 1, 2), (0, 1, 3))
    assert not hulls_disjoint(s, (0, 1, 2), (0, 1, 3))
    # three shared vertices is impossible for interior-disjoint hulls
    s5 = PointSet([(0, 0), (4, 1), (2, 3), (2, -3), (9, 9)])
    assert not hulls_interior_disjoint(s5, (0, 1, 2), (0, 1, 4))


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_find_disjoint_tuple_matches_brute_force(seed):
    s = random_point_set(8, random.Random(seed))
    for sizes, mode in (((3, 3), "disjoint"), ((3, 3), "interior-disjoint")):
        compatible = hulls_disjoint if mode == "disjoint" else hulls_interior_disjoint
        brute = any(
            is_hole(s, x1) and is_hole(s, x2) and compatible(s, x1, x2)
            for x1 in itertools.combinations(range(8), 3)
            for x2 in itertools.combinations(range(8), 3)
            if x1 < x2
        )
        found = find_disjoint_tuple(s, sizes, mode)
        assert (found is not None) == brute
        if found is not None:
            h1, h2 = found
            assert is_hole(s, h1.indices) and is_hole(s, h2.indices)
            assert compatible(s, h1.indices, h2.indices)


def test_two_hole_pair_semantics():
    # 2-holes are plain pairs: 4 points always split into two disjoint pairs
    square = PointSet([(0, 0), (10, 0), (10, 10), (0, 11)])
    found = find_disjoint_tuple(square, (2, 2), "disjoint")
    assert found is not None
    tri = PointSet([(0, 0), (10, 0), (5, 8)])
    assert find_disjoint_tuple(tri, (2, 2), "disjoint") is None


def test_hull_vertices_whole_set():
    s = PointSet([(0, 0), (10, 0), (0, 10), (3, 3)])
    assert sorted(hull_vertices(s)) == [0, 1, 2]
