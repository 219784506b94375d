"""Exact planar geometry primitives: orientations, point sets, chirotopes.

Everything here is computed with arbitrary-precision integers (or
`fractions.Fraction` after projective normalization); no floating point
enters any predicate.

Conventions used throughout the package:

* point indices are 0-based;
* ``orient(p, q, r)`` is the sign of the homogeneous 3x3 determinant,
  +1 iff ``r`` lies strictly left of the directed line ``p -> q``;
* a *canonical* point set has strictly increasing x-coordinates, point 0
  extremal, and points ``1..n-1`` in counterclockwise angular order around
  point 0 (equivalently: every triple ``(0, a, b)`` with ``a < b`` is
  positively oriented).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

Coord = Union[int, Fraction]

POSITIVE = 1
NEGATIVE = -1
ZERO = 0


class Point(NamedTuple):
    """A planar point with exact (integer or rational) coordinates."""

    x: Coord
    y: Coord


def _sign(value: Coord) -> int:
    if value > 0:
        return POSITIVE
    if value < 0:
        return NEGATIVE
    return ZERO


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of det [[1,1,1],[px,qx,rx],[py,qy,ry]].

    +1 iff r is strictly left of the directed line p->q, -1 iff strictly
    right, 0 iff the three points are collinear.
    """
    return _sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


def _check_coord(value: Coord) -> Coord:
    # floats silently poison exactness; reject them at the boundary.
    if isinstance(value, float):
        raise TypeError(f"coordinates must be int or Fraction, got float {value!r}")
    if not isinstance(value, (int, Fraction)):
        raise TypeError(f"coordinates must be int or Fraction, got {type(value).__name__}")
    return value


class PointSet:
    """An ordered list of points in general position (no three collinear).

    General position is checked on construction; pass ``canonical=True`` to
    additionally validate the canonical-form invariants.
    """

    __slots__ = ("points", "_chi_cache")

    def __init__(self, points: Iterable[Sequence[Coord]], canonical: bool = False):
        pts = tuple(Point(_check_coord(p[0]), _check_coord(p[1])) for p in points)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points")
        self.points: tuple[Point, ...] = pts
        self._chi_cache: dict[tuple[int, int, int], int] | None = None
        bad = self._first_collinear_triple()
        if bad is not None:
            raise ValueError(f"points {bad} are collinear")
        if canonical and not self.is_canonical():
            raise ValueError("point set does not satisfy the canonical-form invariants")

    def _first_collinear_triple(self) -> tuple[int, int, int] | None:
        pts = self.points
        for a, b, c in itertools.combinations(range(len(pts)), 3):
            if orient(pts[a], pts[b], pts[c]) == ZERO:
                return (a, b, c)
        return None

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({list(self.points)!r})"

    def chi(self, a: int, b: int, c: int) -> int:
        """Orientation of the indexed triple, cached over sorted triples."""
        if self._chi_cache is None:
            self._chi_cache = {}
        key, parity = _sort_triple(a, b, c)
        sign = self._chi_cache.get(key)
        if sign is None:
            i, j, k = key
            sign = orient(self.points[i], self.points[j], self.points[k])
            self._chi_cache[key] = sign
        return sign * parity

    def is_canonical(self) -> bool:
        pts = self.points
        if any(pts[i].x >= pts[i + 1].x for i in range(len(pts) - 1)):
            return False
        return all(
            self.chi(0, a, b) == POSITIVE
            for a, b in itertools.combinations(range(1, len(pts)), 2)
        )


def _sort_triple(a: int, b: int, c: int) -> tuple[tuple[int, int, int], int]:
    """Sorted triple plus the permutation parity (+1 even, -1 odd)."""
    if a == b or a == c or b == c:
        raise ValueError(f"indices must be distinct, got {(a, b, c)}")
    parity = 1
    if a > b:
        a, b = b, a
        parity = -parity
    if b > c:
        b, c = c, b
        parity = -parity
    if a > b:
        a, b = b, a
        parity = -parity
    return (a, b, c), parity


@dataclass(frozen=True)
class Signotope:
    """A total orientation map on sorted index triples of ``0..n-1``.

    ``signs`` maps every sorted triple to +1 or -1; other argument orders are
    derived by antisymmetry via :meth:`chi`. Whether the map satisfies the
    monotone sign-change axioms is checked separately by
    :func:`check_signotope`.
    """

    n: int
    signs: dict[tuple[int, int, int], int]

    def __post_init__(self) -> None:
        expected = {t for t in itertools.combinations(range(self.n), 3)}
        if set(self.signs) != expected:
            raise ValueError("signs must cover exactly the sorted triples of 0..n-1")
        if any(s not in (POSITIVE, NEGATIVE) for s in self.signs.values()):
            raise ValueError("signs must be +1 or -1")

    def chi(self, a: int, b: int, c: int) -> int:
        key, parity = _sort_triple(a, b, c)
        return self.signs[key] * parity

    def triples(self) -> Iterator[tuple[int, int, int]]:
        return itertools.combinations(range(self.n), 3)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Signotope)
            and self.n == other.n
            and self.signs == other.signs
        )


def chirotope(s: PointSet) -> Signotope:
    """Orientation map of an x-sorted point set.

    Requires strictly increasing x-coordinates (canonical sets qualify): the
    monotone sign-change axioms checked by :func:`check_signotope` only hold
    relative to that labeling.
    """
    pts = s.points
    if any(pts[i].x >= pts[i + 1].x for i in range(len(pts) - 1)):
        raise ValueError("chirotope requires strictly increasing x-coordinates")
    signs = {
        (a, b, c): orient(pts[a], pts[b], pts[c])
        for a, b, c in itertools.combinations(range(len(pts)), 3)
    }
    return Signotope(len(pts), signs)


def check_signotope(sig: Signotope) -> list[tuple[int, int, int, int]]:
    """All 4-tuples whose orientation sequence changes sign more than once.

    For every a<b<c<d the sequence chi_abc, chi_abd, chi_acd, chi_bcd must
    change sign at most once; returns the violating 4-tuples (empty list iff
    the axioms hold).
    """
    bad = []
    signs = sig.signs
    for a, b, c, d in itertools.combinations(range(sig.n), 4):
        seq = (signs[a, b, c], signs[a, b, d], signs[a, c, d], signs[b, c, d])
        changes = sum(seq[i] != seq[i + 1] for i in range(3))
        if changes > 1:
            bad.append((a, b, c, d))
    return bad


def canonical_order(s: PointSet) -> list[int]:
    """Relabeling that makes ``s`` canonical: output position i -> input index.

    Point 0 of the new order is the lexicographically smallest point; the rest
    are sorted counterclockwise around it using ``orient`` as comparator (no
    trigonometry). The result always satisfies the angular invariant; whether
    x-coordinates also increase decides if a projective step is needed.
    """
    pts = s.points
    first = min(range(len(pts)), key=lambda i: pts[i])
    rest = [i for i in range(len(pts)) if i != first]

    def around(i: int, j: int) -> int:
        # i before j iff j lies strictly left of the ray first->i.
        return -orient(pts[first], pts[i], pts[j])

    rest.sort(key=functools.cmp_to_key(around))
    return [first] + rest


def canonicalize(s: PointSet) -> PointSet:
    """Relabel (and projectively transform if needed) into canonical form.

    The output has the same order type as the input: its chirotope equals the
    input chirotope up to the applied relabeling. Coordinates stay integral
    when relabeling alone suffices; otherwise they become Fractions via
    :func:`project_normalize`.
    """
    if len(s) <= 2:
        return _canonicalize_small(s)
    order = canonical_order(s)
    relabeled = PointSet(s.points[i] for i in order)
    if all(
        relabeled[i].x < relabeled[i + 1].x for i in range(len(relabeled) - 1)
    ):
        result = relabeled
    else:
        result = project_normalize(relabeled)
    assert result.is_canonical()
    _assert_same_order_type(s, result, order)
    return result


def _canonicalize_small(s: PointSet) -> PointSet:
    # n <= 2 has no triples: any labeling works; fix increasing x, shearing
    # away a vertical tie (shear keeps orientations, vacuously here).
    pts = sorted(s.points)
    if len(pts) == 2 and pts[0].x == pts[1].x:
        pts = sorted(Point(p.x + p.y, p.y) for p in pts)
    return PointSet(pts)


def _assert_same_order_type(
    original: PointSet, result: PointSet, order: Sequence[int]
) -> None:
    position = {src: dst for dst, src in enumerate(order)}
    for a, b, c in itertools.combinations(range(len(original)), 3):
        if original.chi(a, b, c) != result.chi(position[a], position[b], position[c]):
            raise AssertionError(
                f"order type not preserved on triple {(a, b, c)}"
            )


def project_normalize(s: PointSet) -> PointSet:
    """Projective transform making x-coordinates strictly increase.

    Precondition: point 0 is extremal and points 1..n-1 are sorted
    counterclockwise around it (all triples (0,a,b), a<b, positive). The
    output is a rational-coordinate set of identical order type — chirotope
    equality is asserted internally, triple for triple — with strictly
    increasing x and point 0 still first.

    The transform is assembled from exact integer/rational pieces:

    1. translate point 0 to the origin;
    2. apply an integer positive-determinant linear map sending the cone of
       directions to the other points strictly into the half-plane x > 0
       (possible because point 0 is extremal, so the cone spans < 180 deg);
    3. reinsert point 0 as (eps, -K*eps) with K larger than every |slope| and
       eps a small positive Fraction chosen so all triples through point 0
       keep their sign;
    4. map every point (x, y) -> (y/x, 1/x). Multiplying the transformed
       determinant columns by the (positive) x-coordinates gives a cyclic row
       permutation of the original determinant, so every orientation is
       preserved; the new x-coordinate is the slope y/x, which increases
       along the counterclockwise order.
    """
    n = len(s)
    if n < 3:
        return _canonicalize_small(s)
    pts = s.points
    for a, b in itertools.combinations(range(1, n), 2):
        if s.chi(0, a, b) != POSITIVE:
            raise ValueError(
                "project_normalize requires points 1..n-1 sorted counterclockwise "
                f"around point 0 (triple (0,{a},{b}) is not positive)"
            )

    origin = pts[0]
    q = [Point(p.x - origin.x, p.y - origin.y) for p in pts[1:]]

    # Widen the direction cone [u, w] slightly so its closure maps strictly
    # inside the image cone, then send it into x > 0 with positive determinant.
    u, w = q[0], q[-1]
    up = Point(2 * u.x - w.x, 2 * u.y - w.y)
    wp = Point(2 * w.x - u.x, 2 * w.y - u.y)
    # A = B * adj(M) with M = [up wp] and B mapping e1->(1,-1), e2->(1,1);
    # det A = det B * det M > 0.
    m00, m01, m10, m11 = up.x, wp.x, up.y, wp.y
    a00, a01, a10, a11 = m11, -m01, -m10, m00  # adj(M)
    t00, t01 = a00 + a10, a01 + a11  # row 1 of B*adj(M), B = [[1,1],[-1,1]]
    t10, t11 = a10 - a00, a11 - a01
    r = [Point(t00 * p.x + t01 * p.y, t10 * p.x + t11 * p.y) for p in q]
    assert all(p.x > 0 for p in r)

    slope_bound = max(abs(p.y) // p.x for p in r) + 1
    eps = _reinsertion_epsilon(r, slope_bound)
    r0 = Point(eps, -slope_bound * eps)
    transformed = [Point(Fraction(p.y, 1) / p.x, Fraction(1, 1) / p.x) for p in [r0] + r]
    result = PointSet(transformed)

    for a, b, c in itertools.combinations(range(n), 3):
        if s.chi(a, b, c) != result.chi(a, b, c):
            raise AssertionError(f"projective step changed triple {(a, b, c)}")
    assert all(result[i].x < result[i + 1].x for i in range(n - 1))
    return result


def _reinsertion_epsilon(r: Sequence[Point], slope_bound: int) -> Fraction:
    """Largest-safe eps/2 for reinserting the apex as (eps, -K*eps).

    Replacing the origin by (eps, -K*eps) perturbs each triple (0,a,b) by at
    most eps*(K*|xb-xa| + |yb-ya|); keep that below |cross(a,b)|.
    """
    bound: Fraction | None = None
    for pa, pb in itertools.combinations(r, 2):
        cross = pa.x * pb.y - pa.y * pb.x
        weight = slope_bound * abs(pb.x - pa.x) + abs(pb.y - pa.y) + 1
        candidate = Fraction(abs(cross), weight)
        if bound is None or candidate < bound:
            bound = candidate
    assert bound is not None and bound > 0
    return bound / 2


def read_points(path: str) -> PointSet:
    """Read the point-set file format: one ``x y`` integer pair per line.

    Lines starting with ``#`` are comments; blank lines are ignored.
    """
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two integers, got {line!r}")
            try:
                points.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: expected two integers, got {line!r}") from exc
    return PointSet(points)


def write_points(path: str, s: PointSet, header: str | None = None) -> None:
    """Write a point set in the same format (integer coordinates only)."""
    for p in s.points:
        if not isinstance(p.x, int) or not isinstance(p.y, int):
            raise ValueError("point-set files hold integer coordinates only")
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for p in s.points:
            fh.write(f"{p.x} {p.y}\n")
