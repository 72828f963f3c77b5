import itertools
import random

import pytest

from latpoly.equivalence import UnimodularMap
from latpoly.polytope import NotFullDimensional, make_polytope, origin_interior

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_unimodular(rng: random.Random, d: int, shears: int = 3, bound: int = 1) -> UnimodularMap:
    """Signed permutation times a few elementary shears, plus a translation."""
    perm = list(range(d))
    rng.shuffle(perm)
    U = [[0] * d for _ in range(d)]
    for i, j in enumerate(perm):
        U[i][j] = rng.choice((1, -1))
    for _ in range(shears):
        if d < 2:
            break
        i, j = rng.sample(range(d), 2)
        q = rng.choice([x for x in range(-bound, bound + 1) if x])
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    w = [rng.randint(-2, 2) for _ in range(d)]
    return UnimodularMap(U, w)


def random_polytope(rng: random.Random, d: int, box: int = 4, max_extra: int = 5):
    """Random integral polytope with the origin strictly inside."""
    while True:
        if rng.random() < 0.4:
            # subsets of {-1,0,1}^d hit reflexive polytopes often
            pool = [p for p in itertools.product((-1, 0, 1), repeat=d) if any(p)]
            pts = rng.sample(pool, rng.randint(d + 1, min(len(pool), d + 1 + max_extra)))
        else:
            k = rng.randint(d + 1, d + 1 + max_extra)
            pts = [tuple(rng.randint(-box, box) for _ in range(d)) for _ in range(k)]
        try:
            P = make_polytope(pts)
        except NotFullDimensional:
            continue
        if origin_interior(P):
            return P


@pytest.fixture
def rng():
    return random.Random(20260416)
