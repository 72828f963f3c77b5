"""Full-dimensional integral polytopes in V-representation.

The vertex list is the source of truth. Facets are derived once on demand
and cached; after that a :class:`Polytope` is read-only.
"""
from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import (
    DimensionMismatch,
    LatticeError,
    content,
    determinant,
    dot,
    primitive,
    rank,
)

DEBUG = bool(os.environ.get("LATPOLY_DEBUG"))


class PolytopeError(LatticeError):
    pass


class EmptyInput(PolytopeError):
    pass


class NotFullDimensional(PolytopeError):
    def __init__(self, affine_dim: int, ambient_dim: int):
        super().__init__(f"affine hull has dimension {affine_dim}, "
                         f"ambient dimension is {ambient_dim}")
        self.affine_dim = affine_dim
        self.ambient_dim = ambient_dim


class OriginNotInterior(PolytopeError):
    pass


class NotIntegral(PolytopeError):
    def __init__(self, facet: "HalfSpace"):
        super().__init__(f"facet {facet} has offset {facet.offset} != 1; "
                         "the polar dual is not a lattice polytope")
        self.facet = facet


@dataclass(frozen=True, order=True)
class HalfSpace:
    """``<normal, x> <= offset`` with a primitive integer normal."""

    normal: tuple
    offset: int

    def slack(self, x: Sequence[int]) -> int:
        return self.offset - dot(self.normal, x)

    def __str__(self):
        return f"{self.normal}.x <= {self.offset}"


def _hyperplane_normal(pts: Sequence[Sequence[int]]):
    """Integer normal of the hyperplane through ``d`` points of Z^d, or None.

    Generalized cross product of the difference vectors: the j-th entry is
    the signed maximal minor with column j deleted.
    """
    p0 = pts[0]
    d = len(p0)
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    if d == 1:
        return (1,)
    normal = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in diffs]
        m = determinant(minor)
        normal.append(-m if j % 2 else m)
    if not any(normal):
        return None
    return primitive(normal)


def _bruteforce_facets(points: Sequence[tuple], d: int, first_only: bool = False):
    """Facets of conv(points) from every affinely independent d-subset.

    With ``first_only`` the search is restricted to subsets through the
    lexicographically least point (always a vertex) and stops at the first
    facet found.
    """
    n = len(points)
    found: dict[HalfSpace, int] = {}
    masks: list[int] = []
    if first_only:
        i0 = min(range(n), key=points.__getitem__)
        rest = [i for i in range(n) if i != i0]
        pool = ((i0,) + c for c in combinations(rest, d - 1))
    else:
        pool = combinations(range(n), d)
    for combo in pool:
        cmask = 0
        for i in combo:
            cmask |= 1 << i
        if any(cmask & ~m == 0 for m in masks):
            continue
        normal = _hyperplane_normal([points[i] for i in combo])
        if normal is None:
            continue
        c = dot(normal, points[combo[0]])
        pos = neg = False
        tight = 0
        for i, p in enumerate(points):
            s = dot(normal, p) - c
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            else:
                tight |= 1 << i
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            normal = tuple(-x for x in normal)
            c = -c
        h = HalfSpace(normal, c)
        if h not in found:
            found[h] = tight
            masks.append(tight)
            if first_only:
                break
    return sorted(found.items())


def _gift_wrap_facets(points: Sequence[tuple], d: int):
    """Facets of conv(points) by rotating hyperplanes about ridges.

    Ridges of a facet come from the facets of its points projected along a
    coordinate where the facet normal is nonzero (injective on the facet
    hyperplane). Around a ridge with slack g >= 0 on the facet, and facet
    slack f >= 0 on everything, the neighbouring facet is g + t f with t the
    largest -g(v)/f(v) over points v off the facet.
    """
    n = len(points)
    (h0, m0), = _bruteforce_facets(points, d, first_only=True)
    found = {h0: m0}
    queue = [(h0, m0)]
    while queue:
        h, mask = queue.pop()
        a, c = h.normal, h.offset
        on = [i for i in range(n) if mask >> i & 1]
        j = next(k for k, x in enumerate(a) if x)
        proj = [points[i][:j] + points[i][j + 1:] for i in on]
        off = [(c - dot(a, points[i]), points[i]) for i in range(n) if not mask >> i & 1]
        for rh, _ in _supporting_facets(proj, d - 1):
            b = rh.normal[:j] + (0,) + rh.normal[j:]
            e = rh.offset
            num = den = None  # t = num / den, den > 0
            for f, v in off:
                g = e - dot(b, v)
                if num is None or -g * den > num * f:
                    num, den = -g, f
            normal = [den * x + num * y for x, y in zip(b, a)]
            offset = den * e + num * c
            k = content(normal)
            hw = HalfSpace(tuple(x // k for x in normal), offset // k)
            if hw in found:
                continue
            tight = 0
            for i, p in enumerate(points):
                if dot(hw.normal, p) == hw.offset:
                    tight |= 1 << i
            found[hw] = tight
            queue.append((hw, tight))
    return sorted(found.items())


def _supporting_facets(points: Sequence[tuple], d: int) -> list[tuple[HalfSpace, int]]:
    """All facets of the full-dimensional conv(points), sorted, each with the
    bitmask of points lying on it."""
    if d == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        return sorted([
            (HalfSpace((-1,), -lo), sum(1 << i for i, p in enumerate(points) if p[0] == lo)),
            (HalfSpace((1,), hi), sum(1 << i for i, p in enumerate(points) if p[0] == hi)),
        ])
    if len(points) <= d + 3:
        return _bruteforce_facets(points, d)
    return _gift_wrap_facets(points, d)


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


class Polytope:
    """A full-dimensional lattice polytope, stored by its vertices.

    Use :func:`make_polytope` for arbitrary point sets; the constructor
    trusts that ``vertices`` are exactly the hull vertices.
    """

    __slots__ = ("dim", "vertices", "_facets", "_lock", "_levels", "_incidence")

    def __init__(self, vertices: Iterable[Sequence[int]], dim: int | None = None):
        verts = tuple(sorted({tuple(int(x) for x in v) for v in vertices}))
        if not verts:
            raise EmptyInput("polytope needs at least one vertex")
        self.dim = len(verts[0]) if dim is None else dim
        if any(len(v) != self.dim for v in verts):
            raise DimensionMismatch("vertices of mixed dimension")
        self.vertices = verts
        self._facets = None
        self._levels = None
        self._incidence = None
        self._lock = threading.Lock()
        if DEBUG and self.dim > 0:
            assert affine_dimension(verts) == self.dim, "vertices are not full-dimensional"
            assert tuple(_hull_vertices(list(verts), self.dim)) == verts, "vertex list is not hull-minimal"

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={list(self.vertices)})"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def facets(self) -> tuple[HalfSpace, ...]:
        if self._facets is None:
            with self._lock:
                if self._facets is None:
                    fs = _supporting_facets(self.vertices, self.dim)
                    self._incidence = tuple(m for _, m in fs)
                    self._facets = tuple(h for h, _ in fs)
        return self._facets

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def _scan_levels(self):
        """Facets of the projections onto the first k coordinates, k = 1..d."""
        if self._levels is None:
            levels = []
            for k in range(1, self.dim + 1):
                if k == self.dim:
                    hs = self.facets
                else:
                    proj = sorted({v[:k] for v in self.vertices})
                    hs = [h for h, _ in _supporting_facets(proj, k)]
                upper = [(h.normal[:k - 1], h.normal[k - 1], h.offset) for h in hs if h.normal[k - 1] > 0]
                lower = [(h.normal[:k - 1], -h.normal[k - 1], h.offset) for h in hs if h.normal[k - 1] < 0]
                flat = [(h.normal[:k - 1], h.offset) for h in hs if h.normal[k - 1] == 0]
                levels.append((upper, lower, flat))
            self._levels = levels
        return self._levels


def _hull_vertices(pts: list[tuple], d: int) -> list[tuple]:
    """The points of ``pts`` (sorted, full-dimensional) that are hull vertices."""
    if len(pts) == d + 1:
        # affinely independent: a simplex, every point is a vertex
        return pts
    facets = _supporting_facets(pts, d)
    verts = []
    for i, p in enumerate(pts):
        normals = [h.normal for h, m in facets if m >> i & 1]
        if len(normals) >= d and rank(normals) == d:
            verts.append(p)
    return verts


def make_polytope(points: Iterable[Sequence[int]]) -> Polytope:
    """Convex hull of ``points``; non-vertex input points are dropped."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise EmptyInput("no points given")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    adim = affine_dimension(pts)
    if adim != d:
        raise NotFullDimensional(adim, d)
    return Polytope(_hull_vertices(pts, d), d)


def facet_enumeration(P: Polytope) -> list[HalfSpace]:
    return list(P.facets)


def contains(P: Polytope, x: Sequence[int], strict: bool = False) -> bool:
    if len(x) != P.dim:
        raise DimensionMismatch(f"point of dimension {len(x)} in a {P.dim}-polytope")
    if strict:
        return all(h.slack(x) > 0 for h in P.facets)
    return all(h.slack(x) >= 0 for h in P.facets)


def _scan(P: Polytope, n: int, strict: bool, enumerate_points: bool):
    """Walk integer points of nP coordinate by coordinate.

    The range of coordinate k is cut out exactly by the facets of the
    projection onto the first k coordinates, so every visited prefix lies in
    the projected dilate. Only the last level applies strictness.
    """
    levels = P._scan_levels()
    d = P.dim
    points = []

    def bounds(k, prefix, strict_here):
        upper, lower, flat = levels[k]
        if strict_here:
            for a, c in flat:
                if dot(a, prefix) >= n * c:
                    return 1, 0
        hi = lo = None
        s = 1 if strict_here else 0
        for a, ak, c in upper:
            b = (n * c - dot(a, prefix) - s) // ak
            if hi is None or b < hi:
                hi = b
        for a, bk, c in lower:
            b = -((n * c - dot(a, prefix) - s) // bk)
            if lo is None or b > lo:
                lo = b
        return lo, hi

    def rec(k, prefix):
        last = k == d - 1
        lo, hi = bounds(k, prefix, strict and last)
        if lo > hi:
            return 0
        if last:
            if enumerate_points:
                for x in range(lo, hi + 1):
                    points.append(prefix + (x,))
            return hi - lo + 1
        total = 0
        for x in range(lo, hi + 1):
            total += rec(k + 1, prefix + (x,))
        return total

    total = rec(0, ())
    return points if enumerate_points else total


def count_lattice_points(P: Polytope, n: int = 1, strict: bool = False) -> int:
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    if n == 0:
        return 0 if strict else 1
    return _scan(P, n, strict, False)


def lattice_points(P: Polytope, strict: bool = False, n: int = 1) -> list[tuple]:
    if n == 0:
        return [] if strict else [(0,) * P.dim]
    return sorted(_scan(P, n, strict, True))


def polar_dual(P: Polytope) -> Polytope:
    """The polar dual, when it is a lattice polytope.

    Vertices of the dual are the facet normals scaled to level one; with
    primitive normals that is integral exactly when every offset is 1.
    """
    fs = P.facets
    bad = [h for h in fs if h.offset <= 0]
    if bad:
        raise OriginNotInterior(f"origin is not interior; violated by {bad[0]}")
    for h in fs:
        if h.offset != 1:
            raise NotIntegral(h)
    return Polytope([h.normal for h in fs], P.dim)


def is_reflexive(P: Polytope) -> bool:
    # All primitive facet offsets equal to 1 forces the origin to be the
    # only interior lattice point: such a point x has <a, x> <= 0 for every
    # facet normal a, and the normals positively span R^d.
    return all(h.offset == 1 for h in P.facets)


def origin_interior(P: Polytope) -> bool:
    return all(h.offset > 0 for h in P.facets)


def simplex_volume(P: Polytope) -> int:
    v0 = P.vertices[0]
    return abs(determinant([[a - b for a, b in zip(v, v0)] for v in P.vertices[1:]]))


def normalized_volume(P: Polytope) -> int:
    if P.is_simplex():
        return simplex_volume(P)
    from .ehrhart import delta_vector

    return sum(delta_vector(P))


def vertex_facet_incidence(P: Polytope) -> list[list[bool]]:
    P.facets
    return [[bool(m >> i & 1) for m in P._incidence] for i in range(len(P.vertices))]


def translate(P: Polytope, w: Sequence[int]) -> Polytope:
    return Polytope([tuple(a + b for a, b in zip(v, w)) for v in P.vertices], P.dim)


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1
