"""Unimodular equivalence of lattice polytopes.

Equivalence is decided by exhaustive search: fix an anchor basis among the
vertices of P, try every image tuple among the vertices of Q that respects
cheap per-vertex and pairwise invariants, and solve for the map exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Sequence

from .ehrhart import delta
from .lattice import (
    DimensionMismatch,
    LatticeError,
    content,
    determinant,
    inverse_rational,
    matmul,
    rank,
    vecmat,
)
from .polytope import (
    Polytope,
    count_lattice_points,
    is_reflexive,
    lattice_points,
    polar_dual,
)


class NotUnimodular(LatticeError):
    pass


@dataclass(frozen=True)
class UnimodularMap:
    """x -> x U + w on row vectors."""

    matrix: tuple
    translation: tuple

    def __init__(self, matrix, translation=None):
        U = tuple(tuple(int(x) for x in row) for row in matrix)
        d = len(U)
        w = (0,) * d if translation is None else tuple(int(x) for x in translation)
        if len(w) != d or any(len(row) != d for row in U):
            raise DimensionMismatch("map matrix must be square and match the translation")
        if abs(determinant(U)) != 1:
            raise NotUnimodular(f"det = {determinant(U)}")
        object.__setattr__(self, "matrix", U)
        object.__setattr__(self, "translation", w)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> tuple:
        return tuple(a + b for a, b in zip(vecmat(v, self.matrix), self.translation))

    def inverse(self) -> "UnimodularMap":
        inv = [[int(q) for q in row] for row in inverse_rational(self.matrix)]
        w = tuple(-x for x in vecmat(self.translation, inv))
        return UnimodularMap(inv, w)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """``self`` after ``other``."""
        U = matmul(other.matrix, self.matrix)
        return UnimodularMap(U, self(other.translation))

    @classmethod
    def identity(cls, d: int) -> "UnimodularMap":
        return cls([[int(i == j) for j in range(d)] for i in range(d)])


def apply_map(m: UnimodularMap, P: Polytope) -> Polytope:
    if m.dim != P.dim:
        raise DimensionMismatch(f"{m.dim}-dimensional map on a {P.dim}-polytope")
    return Polytope([m(v) for v in P.vertices], P.dim)


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    n_vertices: int
    n_facets: int
    volume: int
    delta: tuple
    n_points: int
    n_interior: int
    incidence_row_sums: tuple


def fingerprint(P: Polytope) -> Fingerprint:
    dv = delta(P)
    P.facets
    degrees = sorted(sum(m >> i & 1 for m in P._incidence) for i in range(P.n_vertices))
    return Fingerprint(
        dim=P.dim,
        n_vertices=P.n_vertices,
        n_facets=len(P.facets),
        volume=sum(dv),
        delta=dv,
        n_points=count_lattice_points(P, 1),
        n_interior=dv[-1],
        incidence_row_sums=tuple(degrees),
    )


def _vertex_facet_masks(P: Polytope) -> list[int]:
    P.facets
    masks = [0] * P.n_vertices
    for j, m in enumerate(P._incidence):
        for i in range(P.n_vertices):
            if m >> i & 1:
                masks[i] |= 1 << j
    return masks


class _Side:
    """Vectors to be matched plus their invariants."""

    def __init__(self, P: Polytope, shift: Sequence[int] | None):
        if shift is None:
            # affine search in homogeneous coordinates
            self.vecs = [v + (1,) for v in P.vertices]
        else:
            self.vecs = [tuple(a - b for a, b in zip(v, shift)) for v in P.vertices]
        self.linear = shift is not None
        self.fmask = _vertex_facet_masks(P)
        self.sig = [self._sig(i) for i in range(len(self.vecs))]

    def _sig(self, i):
        deg = bin(self.fmask[i]).count("1")
        return (deg, content(self.vecs[i]) if self.linear else 0)

    def pair(self, i, j):
        diff = [a - b for a, b in zip(self.vecs[i], self.vecs[j])]
        return bin(self.fmask[i] & self.fmask[j]).count("1"), content(diff)


def _choose_anchor(side: _Side, m: int) -> list[int]:
    """m linearly independent vectors, rarest signature classes first."""
    freq = {}
    for s in side.sig:
        freq[s] = freq.get(s, 0) + 1
    order = sorted(range(len(side.vecs)), key=lambda i: (freq[side.sig[i]], i))
    chosen: list[int] = []
    for i in order:
        if rank([side.vecs[k] for k in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == m:
                return chosen
    raise AssertionError("polytope is not full-dimensional")


def _search(A: _Side, B: _Side):
    m = len(A.vecs[0])
    anchor = _choose_anchor(A, m)
    basis = [A.vecs[i] for i in anchor]
    det = determinant(basis)
    adj = [[int(q * det) for q in row] for row in inverse_rational(basis)]
    targets = set(B.vecs)
    pairs_a = {(i, j): A.pair(anchor[i], anchor[j]) for i in range(m) for j in range(i)}
    cands = [[q for q in range(len(B.vecs)) if B.sig[q] == A.sig[a]] for a in anchor]
    chosen: list[int] = []

    def finish():
        S = [B.vecs[q] for q in chosen]
        num = matmul(adj, S)
        if any(x % det for row in num for x in row):
            return None
        M = [[x // det for x in row] for row in num]
        if abs(determinant(M)) != 1:
            return None
        for v in A.vecs:
            if vecmat(v, M) not in targets:
                return None
        return M

    def rec(k):
        if k == m:
            return finish()
        for q in cands[k]:
            if q in chosen:
                continue
            if any(B.pair(q, chosen[j]) != pairs_a[(k, j)] for j in range(k)):
                continue
            chosen.append(q)
            M = rec(k + 1)
            if M is not None:
                return M
            chosen.pop()
        return None

    return rec(0)


def _unique_interior_point(P: Polytope, fp: Fingerprint | None):
    if is_reflexive(P):
        return (0,) * P.dim
    n_int = fp.n_interior if fp is not None else count_lattice_points(P, 1, strict=True)
    if n_int != 1:
        return None
    return lattice_points(P, strict=True)[0]


def are_equivalent(P: Polytope, Q: Polytope, check_fingerprint: bool = True,
                   linear: bool = False):
    """A map m with apply_map(m, P) == Q, or None when none exists.

    With ``linear`` only maps fixing the origin (zero translation) count.
    """
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dimensions {P.dim} and {Q.dim}")
    d = P.dim
    fp = fq = None
    if check_fingerprint:
        fp, fq = fingerprint(P), fingerprint(Q)
        if fp != fq:
            return None
    if linear:
        p0 = q0 = (0,) * d
    else:
        p0 = _unique_interior_point(P, fp)
        q0 = _unique_interior_point(Q, fq)
    if p0 is not None and q0 is not None:
        # the interior point must map to the interior point: search linear maps
        M = _search(_Side(P, p0), _Side(Q, q0))
        if M is None:
            return None
        U = M
        w = tuple(b - a for a, b in zip(vecmat(p0, U), q0))
    else:
        M = _search(_Side(P, None), _Side(Q, None))
        if M is None:
            return None
        U = [row[:d] for row in M[:d]]
        w = tuple(M[d][:d])
    m = UnimodularMap(U, w)
    assert apply_map(m, P) == Q
    return m


@dataclass(frozen=True)
class SelfDuality:
    delta_equal: bool
    equivalent: bool | None


def classify_self_duality(P: Polytope, with_equivalence: bool = True) -> SelfDuality:
    from .constructions import NotReflexive

    if not is_reflexive(P):
        raise NotReflexive("self-duality classification needs a reflexive polytope")
    D = polar_dual(P)
    deq = delta(P) == delta(D)
    eq = None
    if with_equivalence:
        eq = are_equivalent(P, D) is not None
        if eq and not deq:
            raise AssertionError("equivalent polytopes with different delta-vectors")
    return SelfDuality(deq, eq)


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angle_cmp(u, v) -> int:
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = _cross(u, v)
    if c:
        return -1 if c > 0 else 1
    return (u[0] ** 2 + u[1] ** 2) - (v[0] ** 2 + v[1] ** 2)


def _reflexive_polygon_chains(box: int = 3, max_vertices: int = 6):
    """Counterclockwise vertex cycles whose every edge lies at height 1.

    An edge u -> v lies on a line at lattice distance 1 from the origin iff
    cross(u, v) equals the lattice length gcd(v - u).
    """
    pts = [(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1) if (x, y) != (0, 0)]
    pts.sort(key=cmp_to_key(_angle_cmp))
    n = len(pts)

    def edge_ok(u, v):
        return _cross(u, v) == gcd(v[0] - u[0], v[1] - u[1])

    def left_turn(a, b, c):
        return _cross((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) > 0

    out = []

    def rec(chain, last_idx):
        s, u = pts[chain[0]], pts[chain[-1]]
        if len(chain) >= 3 and edge_ok(u, s):
            prev = pts[chain[-2]]
            if left_turn(prev, u, s) and left_turn(u, s, pts[chain[1]]):
                out.append([pts[i] for i in chain])
        if len(chain) == max_vertices:
            return
        for j in range(last_idx + 1, n):
            v = pts[j]
            if not edge_ok(u, v):
                continue
            if len(chain) >= 2 and not left_turn(pts[chain[-2]], u, v):
                continue
            chain.append(j)
            rec(chain, j)
            chain.pop()

    for i in range(n):
        rec([i], i)
    return out


def enumerate_reflexive_2d(box: int = 3) -> list[Polytope]:
    """One representative per unimodular class of reflexive polygons.

    Candidates are the height-one vertex cycles inside [-box, box]^2; classes
    are merged with ``are_equivalent`` and the lexicographically least
    candidate of each class is kept.
    """
    buckets: dict[Fingerprint, list[Polytope]] = {}
    for chain in _reflexive_polygon_chains(box):
        P = Polytope(chain, 2)
        assert is_reflexive(P)
        bucket = buckets.setdefault(fingerprint(P), [])
        for i, R in enumerate(bucket):
            if are_equivalent(P, R, check_fingerprint=False) is not None:
                if P.vertices < R.vertices:
                    bucket[i] = P
                break
        else:
            bucket.append(P)
    reps = [P for bucket in buckets.values() for P in bucket]
    reps.sort(key=lambda P: (sum(delta(P)), P.n_vertices, P.vertices))
    return reps


@dataclass(frozen=True)
class TransferReport:
    equivalent: bool
    gamma_equivalent: bool
    delta_equal: bool
    gamma_delta_equal: bool

    @property
    def passed(self) -> bool:
        return (self.equivalent == self.gamma_equivalent
                and self.delta_equal == self.gamma_delta_equal)


def gamma_equivalence_transfer_check(P: Polytope, Q: Polytope) -> TransferReport:
    """Compare equivalence and delta-equality before and after Gamma.

    Gamma is not translation invariant (Gamma([-1,1]) is a pentagon, Gamma([0,2])
    a quadrilateral), so the base pair is compared up to linear maps; when
    the origin is the only interior lattice point of both, that is the same
    as full unimodular equivalence.
    """
    from .constructions import gamma

    if P.dim != Q.dim:
        raise DimensionMismatch(f"dimensions {P.dim} and {Q.dim}")
    GP, GQ = gamma(P), gamma(Q)
    return TransferReport(
        equivalent=are_equivalent(P, Q, linear=True) is not None,
        gamma_equivalent=are_equivalent(GP, GQ) is not None,
        delta_equal=delta(P) == delta(Q),
        gamma_delta_equal=delta(GP) == delta(GQ),
    )
