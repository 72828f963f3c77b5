import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latpoly.constructions import NotReflexive, fixtures, gamma, sylvester_simplex, sylvester_simplex_dual_map
from latpoly.ehrhart import delta
from latpoly.equivalence import (
    NotUnimodular,
    UnimodularMap,
    apply_map,
    are_equivalent,
    classify_self_duality,
    enumerate_reflexive_2d,
    fingerprint,
    gamma_equivalence_transfer_check,
)
from latpoly.lattice import DimensionMismatch
from latpoly.polytope import is_reflexive, make_polytope, polar_dual, translate

from conftest import random_polytope, random_unimodular

F = fixtures()


@pytest.fixture(scope="module")
def polygons():
    return enumerate_reflexive_2d()


def test_unimodular_map_validation():
    with pytest.raises(NotUnimodular):
        UnimodularMap([[2, 0], [0, 1]])
    m = UnimodularMap([[1, 2], [0, 1]], (3, -1))
    assert m.inverse()(m((5, 7))) == (5, 7)
    assert m.compose(m.inverse()) == UnimodularMap.identity(2)


def test_apply_map_examples():
    P = F["example-1-9"]
    assert apply_map(UnimodularMap.identity(3), P) == P
    S = sylvester_simplex(3)
    assert apply_map(sylvester_simplex_dual_map(3), polar_dual(S)) == S
    sq = make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    img = apply_map(UnimodularMap([[1, 1], [0, 1]]), sq)
    assert img != sq and delta(img) == (1, 1, 0)
    with pytest.raises(DimensionMismatch):
        apply_map(UnimodularMap.identity(3), sq)


def test_fingerprint_examples():
    P = F["example-1-9"]
    assert fingerprint(P) != fingerprint(polar_dual(P))
    T = F["example-1-1"]
    assert fingerprint(T) == fingerprint(polar_dual(T))
    assert fingerprint(F["cube-2"]).volume == 8
    assert fingerprint(F["cross-2"]).volume == 4


def test_are_equivalent_examples():
    for P in F.values():
        m = are_equivalent(P, P)
        assert m is not None and apply_map(m, P) == P
    T = F["example-1-1"]
    m = are_equivalent(T, polar_dual(T))
    assert m is not None and apply_map(m, T) == polar_dual(T)
    assert are_equivalent(F["example-1-9"], polar_dual(F["example-1-9"])) is None
    with pytest.raises(DimensionMismatch):
        are_equivalent(F["cube-2"], F["cube-3"])


def test_are_equivalent_without_fingerprint_agrees():
    P = F["example-1-9"]
    assert are_equivalent(P, polar_dual(P), check_fingerprint=False) is None
    assert are_equivalent(P, apply_map(UnimodularMap([[1, 0, 0], [1, 1, 0], [0, 2, 1]]), P),
                          check_fingerprint=False) is not None


@pytest.mark.parametrize("name", sorted(n for n in F if F[n].dim <= 4))
def test_completeness_and_witness_invariance(name):
    P = F[name]
    rng = random.Random(name)
    fp = fingerprint(P)
    for _ in range(5):
        m = random_unimodular(rng, P.dim)
        Q = apply_map(m, P)
        assert fingerprint(Q) == fp
        w = are_equivalent(P, Q)
        assert w is not None and apply_map(w, P) == Q
        w2 = are_equivalent(Q, P)
        assert w2 is not None and apply_map(w2, Q) == P


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_symmetry_on_random_pairs(seed):
    rng = random.Random(seed)
    d = rng.choice((2, 3))
    P = random_polytope(rng, d, box=2)
    Q = random_polytope(rng, d, box=2) if rng.random() < 0.5 else apply_map(random_unimodular(rng, d), P)
    a, b = are_equivalent(P, Q), are_equivalent(Q, P)
    assert (a is None) == (b is None)
    if a is not None:
        assert apply_map(a, P) == Q and apply_map(b, Q) == P


def test_translation_handled_affinely():
    P = make_polytope([(0, 0), (2, 0), (0, 1)])
    Q = translate(P, (5, -3))
    m = are_equivalent(P, Q)
    assert m is not None and apply_map(m, P) == Q
    assert are_equivalent(P, Q, linear=True) is None


def test_classify_self_duality_examples():
    r = classify_self_duality(F["example-1-1"])
    assert r.delta_equal and r.equivalent
    r = classify_self_duality(F["example-1-9"])
    assert r.delta_equal and not r.equivalent
    r = classify_self_duality(F["cube-3"])
    assert not r.delta_equal and not r.equivalent
    with pytest.raises(NotReflexive):
        classify_self_duality(make_polytope([(0, 0), (1, 0), (0, 1)]))


def test_enumerate_reflexive_2d(polygons):
    assert len(polygons) == 16
    assert all(is_reflexive(P) for P in polygons)
    for i, P in enumerate(polygons):
        for Q in polygons[i + 1:]:
            assert are_equivalent(P, Q) is None
    cls = [classify_self_duality(P) for P in polygons]
    assert sum(c.delta_equal for c in cls) == 4
    assert sum(c.equivalent for c in cls) == 4
    # in dimension two the two notions coincide
    assert all(c.delta_equal == c.equivalent for c in cls)


def test_enumeration_closed_under_duality(polygons):
    for P in polygons:
        D = polar_dual(P)
        assert sum(are_equivalent(D, Q) is not None for Q in polygons) == 1


def test_polygon_volumes(polygons):
    # normalized areas of the 16 classes range from 3 to 9, summing dual pairs to 12
    vols = sorted(sum(delta(P)) for P in polygons)
    assert vols[0] == 3 and vols[-1] == 9
    for P in polygons:
        assert sum(delta(P)) + sum(delta(polar_dual(P))) == 12


def test_transfer_examples():
    T = F["example-1-1"]
    r = gamma_equivalence_transfer_check(T, T)
    assert r.passed and r.equivalent and r.gamma_equivalent and r.delta_equal and r.gamma_delta_equal
    P = F["example-1-9"]
    r = gamma_equivalence_transfer_check(P, polar_dual(P))
    assert r.passed and not r.equivalent and not r.gamma_equivalent
    assert r.delta_equal and r.gamma_delta_equal
    r = gamma_equivalence_transfer_check(F["cube-2"], F["cross-2"])
    assert r.passed and not any((r.equivalent, r.gamma_equivalent, r.delta_equal, r.gamma_delta_equal))


def test_transfer_under_linear_maps():
    rng = random.Random(3)
    for name in ("example-1-1", "hexagon", "example-1-9", "cross-3"):
        P = F[name]
        m = random_unimodular(rng, P.dim)
        Q = apply_map(UnimodularMap(m.matrix), P)
        assert gamma_equivalence_transfer_check(P, Q).passed


def test_gamma_is_not_translation_invariant():
    # A translate with the origin still interior is affinely equivalent, yet
    # the Gamma images are not: Gamma only respects linear equivalence.
    P = make_polytope([(-1, -1), (3, -1), (-1, 2)])
    Q = translate(P, (-1, 0))
    assert are_equivalent(P, Q) is not None
    assert are_equivalent(gamma(P), gamma(Q)) is None
    assert are_equivalent(P, Q, linear=True) is None
    assert gamma_equivalence_transfer_check(P, Q).passed
    assert gamma(make_polytope([(-1,), (1,)])).n_vertices == 5
    assert gamma(make_polytope([(0,), (2,)])).n_vertices == 4


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_sylvester_self_duality(d):
    S = sylvester_simplex(d)
    D = polar_dual(S)
    assert are_equivalent(S, D) is not None
    assert apply_map(sylvester_simplex_dual_map(d), D) == S
