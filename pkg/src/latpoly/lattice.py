"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints and matrices are lists of rows, so every
quantity is arbitrary precision. Nothing in here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

LatticePoint = tuple  # tuple[int, ...]
IntMatrix = list  # list[list[int]], row-major


class LatticeError(ValueError):
    pass


class ZeroVector(LatticeError):
    pass


class NotSquare(LatticeError):
    pass


class Singular(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v: Sequence, M: Sequence[Sequence]) -> tuple:
    """Row vector times matrix, ``v M``."""
    if len(v) != len(M):
        raise DimensionMismatch(f"vector of length {len(v)} against {len(M)} rows")
    return tuple(sum(v[i] * M[i][j] for i in range(len(v))) for j in range(len(M[0])))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> LatticePoint:
    """Divide ``v`` by the gcd of its entries, keeping its direction."""
    g = content(v)
    if g == 0:
        raise ZeroVector("primitive() of the zero vector")
    return tuple(x // g for x in v)


def _check_square(M):
    n = len(M)
    if any(len(row) != n for row in M):
        raise NotSquare(f"expected a square matrix, got {n} rows of lengths "
                        f"{sorted({len(r) for r in M})}")
    return n


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = _check_square(M)
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    if not all(isinstance(x, int) for row in M for x in row):
        return len(rref(M)[1])
    # fraction-free elimination; rows are divided by their content to stay small
    a = [list(row) for row in M]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            q = a[i][c]
            if q:
                row = [x * p - q * y for x, y in zip(a[i], a[r])]
                g = content(row)
                a[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == rows:
            break
    return r


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and the pivot columns."""
    a = [[Fraction(x) for x in row] for row in M]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[LatticePoint]:
    """Primitive integer basis of the right kernel ``{x : M x = 0}``."""
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    a, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -a[r][f]
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        basis.append(primitive([int(v * den) for v in x]))
    return basis


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Solve ``A x = b`` exactly; ``A`` must be square and nonsingular."""
    n = _check_square(A)
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {n}")
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise Singular("matrix is singular")
    return [red[i][n] for i in range(n)]


def inverse_rational(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = _check_square(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return [row[n:] for row in red]


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(M)) == 1


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns ``(H, U)`` with ``U M = H``.

    ``H`` is upper triangular in echelon shape, pivots positive, entries above
    each pivot reduced into ``[0, pivot)``; zero rows sink to the bottom.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(row) for row in M]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid down the column until a single nonzero remains at row r
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(L, D, R)`` with ``L M R = D`` and ``d_1 | d_2 | ... | d_n``."""
    n = _check_square(M)
    if determinant(M) == 0:
        raise Singular("Smith normal form requested for a singular matrix")
    D = [list(row) for row in M]
    L = identity(n)
    R = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [x - q * y for x, y in zip(D[dst], D[src])]
        L[dst] = [x - q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in D:
            row[dst] -= q * row[src]
        for row in R:
            row[dst] -= q * row[src]

    for t in range(n):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, n):
                if D[i][t]:
                    add_row(i, t, D[i][t] // p)
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // p)
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row in; the next pass shrinks the pivot
            add_row(t, bad[0], -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            L[t] = [-x for x in L[t]]
    return L, D, R
