"""Polytope constructions over a base polytope, their delta transforms, and
the Sylvester family of self-dual reflexive simplices."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ehrhart import NotASimplex
from .polytope import (
    Polytope,
    PolytopeError,
    is_reflexive,
    make_polytope,
    normalized_volume,
    origin_interior,
    polar_dual,
)


class DimensionTooSmall(PolytopeError):
    pass


class NotReflexive(PolytopeError):
    pass


def _lift(P: Polytope, heights: Sequence[int], extra: Sequence[tuple] = ()) -> list[tuple]:
    pts = [v + (h,) for v in P.vertices for h in heights]
    pts.extend(extra)
    return pts


def _apex(d: int, h: int) -> tuple:
    return (0,) * (d - 1) + (h,)


def prism_sym(P: Polytope) -> Polytope:
    """P x [-1, 1]."""
    return Polytope(_lift(P, (-1, 1)), P.dim + 1)


def prism01(P: Polytope) -> Polytope:
    """P x [0, 1]."""
    if P.dim < 1:
        raise DimensionTooSmall("prism01 needs a polytope of dimension >= 1")
    return Polytope(_lift(P, (0, 1)), P.dim + 1)


def pyramid(P: Polytope) -> Polytope:
    """conv(P x {0}, e_d): P x {0} is a facet, so no vertex is lost."""
    d = P.dim + 1
    return Polytope(_lift(P, (0,), [_apex(d, 1)]), d)


def bipyramid(P: Polytope) -> Polytope:
    """conv(P x {0}, e_d, -e_d)."""
    d = P.dim + 1
    pts = _lift(P, (0,), [_apex(d, 1), _apex(d, -1)])
    # base vertices can be swallowed when the origin is not interior to P
    return Polytope(pts, d) if origin_interior(P) else make_polytope(pts)


def gamma(P: Polytope) -> Polytope:
    """conv(P x [-1, 0], e_d)."""
    d = P.dim + 1
    pts = _lift(P, (-1, 0), [_apex(d, 1)])
    return Polytope(pts, d) if origin_interior(P) else make_polytope(pts)


def gamma_delta_formula(dv: Sequence[int]) -> tuple[int, ...]:
    """delta(Gamma(P)) from delta(P): (i+1) delta_i + (d-i+1) delta_{i-1}."""
    d = len(dv)
    ext = lambda i: dv[i] if 0 <= i < d else 0
    return tuple((i + 1) * ext(i) + (d - i + 1) * ext(i - 1) for i in range(d + 1))


def prism_delta_formula(dv: Sequence[int]) -> tuple[int, ...]:
    """delta(P x [0,1]) from delta(P): (i+1) delta_i + (d-i) delta_{i-1}."""
    d = len(dv)
    ext = lambda i: dv[i] if 0 <= i < d else 0
    return tuple((i + 1) * ext(i) + (d - i) * ext(i - 1) for i in range(d + 1))


def pyramid_delta_formula(dv: Sequence[int]) -> tuple[int, ...]:
    return tuple(dv) + (0,)


def gamma_delta_preimage(dv_gamma: Sequence[int]) -> tuple[Fraction, ...]:
    """Invert the Gamma delta transform by forward substitution.

    The map is lower triangular with nonzero diagonal, which is why equal
    Gamma delta-vectors force equal base delta-vectors.
    """
    d = len(dv_gamma) - 1
    base: list[Fraction] = []
    for i in range(d):
        prev = base[i - 1] if i else 0
        base.append(Fraction(dv_gamma[i] - (d - i + 1) * prev, i + 1))
    return tuple(base)


class SylvesterSequence:
    """b_0 = 2, b_n = 1 + b_0 b_1 ... b_{n-1}, extended lazily."""

    def __init__(self):
        self._values = [2]
        self._product = 2
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        with self._lock:
            while len(self._values) <= n:
                b = self._product + 1
                self._values.append(b)
                self._product *= b
        return self._values[n]

    def product(self, n: int) -> int:
        """b_0 b_1 ... b_n (empty product 1 for n < 0)."""
        out = 1
        for i in range(n + 1):
            out *= self[i]
        return out


_SYLVESTER = SylvesterSequence()


def sylvester(n: int) -> int:
    return _SYLVESTER[n]


def sylvester_product(n: int) -> int:
    return _SYLVESTER.product(n)


def sylvester_simplex(d: int) -> Polytope:
    if d < 3:
        raise DimensionTooSmall(f"the Sylvester simplex needs d >= 3, got {d}")
    e = lambda i, s=1: tuple(s if j == i else 0 for j in range(d))
    verts = [(-3,) + (-2,) * (d - 1), e(0)]
    for i in range(1, d):
        scale = 2 if i < 3 else 2 * sylvester(i - 3)
        v = list(e(i, scale))
        v[0] = 1
        verts.append(tuple(v))
    return Polytope(verts, d)


def sylvester_dual_normal(d: int) -> tuple[int, ...]:
    """Normal of the facet opposite e_1, at level 1."""
    m = 4 * sylvester_product(d - 4)
    a = [-(m - 1), m // 2, m // 2]
    a += [m // (2 * sylvester(i - 4)) for i in range(4, d + 1)]
    return tuple(a)


def sylvester_volume_formula(d: int) -> int:
    return 16 if d == 3 else 2 ** (d + 1) * sylvester_product(d - 4)


def sylvester_simplex_dual_map(d: int):
    """The integer matrix U with f_U(dual) = simplex, translation zero."""
    from .equivalence import UnimodularMap

    if d < 3:
        raise DimensionTooSmall(f"the Sylvester simplex needs d >= 3, got {d}")
    U = [[0] * d for _ in range(d)]
    U[0][0], U[0][1] = 1, 2
    U[1] = [2, 2] + [1] * (d - 2)
    U[2][1], U[2][2] = 1, -1
    for i in range(3, d):
        U[i][1] = 1
        U[i][i] = -sylvester(i - 3)
    return UnimodularMap(U, (0,) * d)


@dataclass
class NillReport:
    dim: int
    volume: int
    dual_volume: int
    lower: int
    upper: int

    @property
    def product(self) -> int:
        return self.volume * self.dual_volume

    @property
    def passed(self) -> bool:
        return self.lower <= self.product <= self.upper


def nill_bounds_check(P: Polytope) -> NillReport:
    """(d+1)^(d+1) <= Vol(P) Vol(P^dual) <= (b_d - 1)^2 for reflexive simplices."""
    if not P.is_simplex():
        raise NotASimplex(f"{len(P.vertices)} vertices in dimension {P.dim}")
    if not is_reflexive(P):
        raise NotReflexive("Nill bounds apply to reflexive simplices only")
    d = P.dim
    return NillReport(d, normalized_volume(P), normalized_volume(polar_dual(P)),
                      (d + 1) ** (d + 1), (sylvester(d) - 1) ** 2)


def cube(d: int) -> Polytope:
    from itertools import product

    return Polytope(product((-1, 1), repeat=d), d)


def cross_polytope(d: int) -> Polytope:
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append(tuple(s if j == i else 0 for j in range(d)))
    return Polytope(pts, d)


def standard_reflexive_simplex(d: int) -> Polytope:
    pts = [tuple(int(j == i) for j in range(d)) for i in range(d)]
    pts.append((-1,) * d)
    return Polytope(pts, d)


def unit_simplex(d: int) -> Polytope:
    pts = [(0,) * d] + [tuple(int(j == i) for j in range(d)) for i in range(d)]
    return Polytope(pts, d)


EXAMPLE_1_1 = [(1, 0), (-1, 2), (-1, -1)]
EXAMPLE_1_9 = [(-1, 0, 1), (-1, 0, -1), (1, 1, 1), (1, 1, -1), (0, -1, 1), (0, -1, -1)]


def fixtures() -> dict[str, Polytope]:
    """Named test polytopes, including the two worked examples."""
    out = {
        "example-1-1": Polytope(EXAMPLE_1_1),
        "example-1-9": Polytope(EXAMPLE_1_9),
        "segment": cube(1),
    }
    for d in (2, 3, 4):
        out[f"cube-{d}"] = cube(d)
        out[f"cross-{d}"] = cross_polytope(d)
        out[f"simplex-{d}"] = standard_reflexive_simplex(d)
    out["hexagon"] = Polytope([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)])
    for d in (3, 4):
        out[f"sylvester-{d}"] = sylvester_simplex(d)
    return out
