"""Lattice point counts of dilates, delta-vectors and Ehrhart polynomials."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Sequence

from .lattice import determinant, inverse_rational, smith_normal_form, vecmat
from .polytope import Polytope, PolytopeError, count_lattice_points


class InternalInconsistency(AssertionError):
    """A delta-vector violated nonnegativity or delta_0 = 1."""


class NotASimplex(PolytopeError):
    pass


def count_points(P: Polytope, n: int) -> int:
    """Number of lattice points in the n-th dilate of P."""
    return count_lattice_points(P, n)


def delta_from_counts(counts: Sequence[int], d: int) -> tuple[int, ...]:
    """Binomial transform: delta_j = sum_k (-1)^k C(d+1, k) i(j - k)."""
    return tuple(
        sum((-1) ** k * comb(d + 1, k) * counts[j - k] for k in range(j + 1))
        for j in range(d + 1)
    )


def _validated(dv: tuple[int, ...]) -> tuple[int, ...]:
    if dv[0] != 1 or any(x < 0 for x in dv):
        raise InternalInconsistency(f"impossible delta-vector {dv}")
    return dv


def delta_vector(P: Polytope) -> tuple[int, ...]:
    d = P.dim
    counts = [count_points(P, n) for n in range(d + 1)]
    return _validated(delta_from_counts(counts, d))


def delta_vector_simplex(S: Polytope) -> tuple[int, ...]:
    """Delta-vector of a lattice simplex from its fundamental parallelepiped.

    The lattice points of the half-open parallelepiped spanned by the cone
    generators (v_i, 1) are in bijection with Z^{d+1} / (generator lattice).
    The Smith form L G R = D gives coset representatives y R^{-1} with
    0 <= y_i < D_ii; each is reduced into the box via barycentric
    coordinates and graded by its last coordinate.
    """
    if not S.is_simplex():
        raise NotASimplex(f"{len(S.vertices)} vertices in dimension {S.dim}")
    d = S.dim
    G = [list(v) + [1] for v in S.vertices]
    det = determinant(G)
    vol = abs(det)
    sign = 1 if det > 0 else -1
    # lambda = x G^{-1} = x A / vol with A the signed adjugate
    A = [[int(q * det) * sign for q in row] for row in inverse_rational(G)]
    _, D, R = smith_normal_form(G)
    Rinv = [[int(q) for q in row] for row in inverse_rational(R)]
    diag = [D[i][i] for i in range(d + 1)]
    delta = [0] * (d + 1)
    active = [i for i, m in enumerate(diag) if m > 1]
    for ys in product(*(range(diag[i]) for i in active)):
        x = [0] * (d + 1)
        for i, y in zip(active, ys):
            if y:
                row = Rinv[i]
                for j in range(d + 1):
                    x[j] += y * row[j]
        lam = vecmat(x, A)
        h, r = divmod(sum(t % vol for t in lam), vol)
        assert r == 0
        delta[h] += 1
    return _validated(tuple(delta))


def delta(P: Polytope) -> tuple[int, ...]:
    """Delta-vector by the cheapest exact route available."""
    return delta_vector_simplex(P) if P.is_simplex() else delta_vector(P)


def is_symmetric(dv: Sequence[int]) -> bool:
    return tuple(dv) == tuple(reversed(dv))


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


@dataclass(frozen=True)
class EhrhartPolynomial:
    coefficients: tuple  # Fractions, constant term first

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, n: int) -> Fraction:
        return sum((c * n ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def ehrhart_from_delta(dv: Sequence[int]) -> EhrhartPolynomial:
    """i(n) = sum_i delta_i C(n + d - i, d), expanded in powers of n."""
    d = len(dv) - 1
    total = [Fraction(0)] * (d + 1)
    for i, di in enumerate(dv):
        if not di:
            continue
        poly = [Fraction(1)]
        for j in range(d):
            # factor (n + d - i - j)
            poly = _poly_mul(poly, [Fraction(d - i - j), Fraction(1)])
        for k, c in enumerate(poly):
            total[k] += di * c / factorial(d)
    return EhrhartPolynomial(tuple(total))


def ehrhart_polynomial(P: Polytope) -> EhrhartPolynomial:
    return ehrhart_from_delta(delta(P))


@dataclass
class PropertyCheck:
    name: str
    passed: bool
    witness: str


@dataclass
class DeltaReport:
    delta: tuple
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def check_delta_properties(P: Polytope, dv: Sequence[int] | None = None) -> DeltaReport:
    """Test the classical delta-vector facts against direct point counts."""
    d = P.dim
    dv = tuple(dv) if dv is not None else delta(P)
    n_all = count_lattice_points(P, 1)
    n_int = count_lattice_points(P, 1, strict=True)
    rep = DeltaReport(dv)
    add = rep.checks.append
    add(PropertyCheck("delta_0 = 1", dv[0] == 1, f"delta_0={dv[0]}"))
    add(PropertyCheck("delta_1 = |P cap Z^d| - (d+1)", dv[1] == n_all - (d + 1),
                      f"delta_1={dv[1]}, points={n_all}, d={d}"))
    add(PropertyCheck("delta_d = interior points", dv[d] == n_int,
                      f"delta_d={dv[d]}, interior={n_int}"))
    add(PropertyCheck("delta_1 >= delta_d", dv[1] >= dv[d], f"{dv[1]} >= {dv[d]}"))
    add(PropertyCheck("delta_i >= 0", all(x >= 0 for x in dv), str(dv)))
    if dv[d] != 0:
        lows = [i for i in range(1, d) if dv[1] > dv[i]]
        add(PropertyCheck("delta_1 <= delta_i when delta_d != 0", not lows,
                          f"violations at {lows}" if lows else "all hold"))
    else:
        add(PropertyCheck("delta_1 <= delta_i when delta_d != 0", True, "skipped: delta_d = 0"))
    return rep
