from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latpoly.constructions import (
    DimensionTooSmall,
    NotReflexive,
    bipyramid,
    cross_polytope,
    fixtures,
    gamma,
    gamma_delta_formula,
    gamma_delta_preimage,
    nill_bounds_check,
    prism01,
    prism_delta_formula,
    prism_sym,
    pyramid,
    pyramid_delta_formula,
    standard_reflexive_simplex,
    sylvester,
    sylvester_dual_normal,
    sylvester_product,
    sylvester_simplex,
    sylvester_simplex_dual_map,
    sylvester_volume_formula,
)
from latpoly.ehrhart import NotASimplex, delta, delta_vector
from latpoly.equivalence import apply_map, are_equivalent
from latpoly.lattice import determinant
from latpoly.polytope import Polytope, is_reflexive, make_polytope, normalized_volume, polar_dual

F = fixtures()
SEGMENT = make_polytope([(-1,), (1,)])
REFLEXIVE = sorted(n for n, P in F.items() if is_reflexive(P) and P.dim <= 3)
SMALL = sorted(n for n, P in F.items() if P.dim <= 3)


def test_prism_sym_examples():
    assert prism_sym(SEGMENT) == F["cube-2"]
    A = prism_sym(F["example-1-1"])
    assert A.n_vertices == 6 and is_reflexive(A)


def test_bipyramid_examples():
    assert bipyramid(SEGMENT) == F["cross-2"]
    B = bipyramid(F["cube-2"])
    assert B.n_vertices == 6 and is_reflexive(B)
    assert all(h.offset == 1 for h in B.facets)


def test_bipyramid_hull_filters_when_origin_not_interior():
    P = make_polytope([(0, 0), (2, 0), (0, 2)])
    B = bipyramid(P)
    # the base vertex at the origin sits between the two apices
    assert (0, 0, 0) not in B.vertices


def test_gamma_examples():
    G = gamma(SEGMENT)
    assert set(G.vertices) == {(-1, 0), (1, 0), (-1, -1), (1, -1), (0, 1)}
    assert is_reflexive(G)
    G = gamma(F["example-1-1"])
    assert G.n_vertices == 7 and is_reflexive(G)
    assert len(G.facets) == 7


def test_prism01_and_pyramid_examples():
    assert prism01(make_polytope([(0,), (1,)])) == make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert pyramid(make_polytope([(0,), (1,)])) == make_polytope([(0, 0), (1, 0), (0, 1)])
    Q = pyramid(F["cube-2"])
    assert Q.n_vertices == 5 and delta(Q) == (1, 6, 1, 0)


def test_prism01_rejects_dimension_zero():
    with pytest.raises(DimensionTooSmall):
        prism01(Polytope([()], 0))


def test_formula_examples():
    assert gamma_delta_formula((1, 1)) == (1, 4, 1)
    assert gamma_delta_formula((1, 4, 1)) == (1, 11, 11, 1)
    assert gamma_delta_formula((1, 0, 0)) == (1, 3, 0, 0)
    assert prism_delta_formula((1, 1)) == (1, 3, 0)
    assert prism_delta_formula((1, 0)) == (1, 1, 0)
    assert pyramid_delta_formula((1, 6, 1)) == (1, 6, 1, 0)


def test_prism_formula_examples_by_counting():
    assert delta_vector(make_polytope([(-1, 0), (1, 0), (-1, 1), (1, 1)])) == (1, 3, 0)
    assert delta_vector(make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])) == (1, 1, 0)
    assert delta_vector(gamma(SEGMENT)) == (1, 4, 1)
    assert delta_vector(gamma(F["example-1-1"])) == (1, 11, 11, 1)


@pytest.mark.parametrize("name", REFLEXIVE)
def test_gamma_formula_matches_counting(name):
    P = F[name]
    assert delta_vector(gamma(P)) == gamma_delta_formula(delta(P))


@pytest.mark.parametrize("name", SMALL)
def test_prism_and_pyramid_formulas_match_counting(name):
    P = F[name]
    dv = delta(P)
    assert delta_vector(prism01(P)) == prism_delta_formula(dv)
    assert delta_vector(pyramid(P)) == pyramid_delta_formula(dv)


@pytest.mark.parametrize("name", REFLEXIVE)
def test_gamma_structure(name):
    P = F[name]
    G = gamma(P)
    assert is_reflexive(G)
    assert len(G.facets) == 2 * len(P.facets) + 1
    assert are_equivalent(polar_dual(G), gamma(polar_dual(P))) is not None


@pytest.mark.parametrize("name", REFLEXIVE)
def test_prism_bipyramid_duality(name):
    P = F[name]
    D = polar_dual(P)
    assert polar_dual(prism_sym(P)) == bipyramid(D)
    assert polar_dual(bipyramid(P)) == prism_sym(D)
    assert is_reflexive(prism_sym(P)) and is_reflexive(bipyramid(P))


deltas = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(1), *[st.integers(0, 50)] * (n - 1)))


@given(deltas, deltas)
def test_gamma_transform_is_injective(a, b):
    # equal Gamma deltas force equal base deltas
    if len(a) == len(b) and gamma_delta_formula(a) == gamma_delta_formula(b):
        assert a == b


@given(deltas)
def test_gamma_preimage_inverts_formula(dv):
    assert gamma_delta_preimage(gamma_delta_formula(dv)) == tuple(Fraction(x) for x in dv)


def test_gamma_preimage_detects_non_images():
    # the triangular solve reads the first d entries; the last one must then agree
    pre = gamma_delta_preimage((1, 4, 2))
    assert gamma_delta_formula(pre) != (1, 4, 2)
    assert any(x.denominator != 1 for x in gamma_delta_preimage((1, 5, 1)))


# -- Sylvester --------------------------------------------------------------

def test_sylvester_sequence():
    assert [sylvester(i) for i in range(5)] == [2, 3, 7, 43, 1807]
    assert sylvester(5) == 1 + 2 * 3 * 7 * 43 * 1807 == 3263443
    assert sylvester_product(-1) == 1
    for n in range(1, 10):
        assert sylvester(n) == 1 + sylvester_product(n - 1)


def test_sylvester_identity():
    for n in range(9):
        assert sum(Fraction(1, sylvester(i)) for i in range(n + 1)) == 1 - Fraction(1, sylvester_product(n))


def test_sylvester_pairwise_coprime():
    vals = [sylvester(i) for i in range(8)]
    assert all(gcd(a, b) == 1 for i, a in enumerate(vals) for b in vals[i + 1:])


def _e(d, i, s=1):
    """s times the i-th unit vector, 1-based."""
    return tuple(s if j == i - 1 else 0 for j in range(d))


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def paper_vertices(d):
    v = [_add(_e(d, 1, -3), *[_e(d, i, -2) for i in range(2, d + 1)]), _e(d, 1)]
    v += [_add(_e(d, 1), _e(d, i, 2)) for i in (2, 3)]
    v += [_add(_e(d, 1), _e(d, i, 2 * sylvester(i - 4))) for i in range(4, d + 1)]
    return v


def paper_normal(d):
    m = 4 * sylvester_product(d - 4)
    return tuple([-(m - 1), m // 2, m // 2] + [m // (2 * sylvester(i - 4)) for i in range(4, d + 1)])


def test_sylvester_simplex_vertices():
    assert set(sylvester_simplex(3).vertices) == {(-3, -2, -2), (1, 0, 0), (1, 2, 0), (1, 0, 2)}
    assert (1, 0, 0, 4) in sylvester_simplex(4).vertices
    assert (1, 0, 0, 0, 6) in sylvester_simplex(5).vertices
    for d in range(3, 8):
        assert set(sylvester_simplex(d).vertices) == set(paper_vertices(d))
    with pytest.raises(DimensionTooSmall):
        sylvester_simplex(2)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_sylvester_simplex_properties(d):
    S = sylvester_simplex(d)
    assert is_reflexive(S)
    assert sylvester_dual_normal(d) == paper_normal(d)
    assert paper_normal(d) in {h.normal for h in S.facets}
    vol = normalized_volume(S)
    assert vol == {3: 16, 4: 64, 5: 384, 6: 5376}[d] == sylvester_volume_formula(d)
    assert vol < sylvester(d) - 1
    assert are_equivalent(S, polar_dual(S)) is not None


@pytest.mark.parametrize("d", [3, 4, 5, 6, 7])
def test_dual_map_matches_stated_permutation(d):
    m = sylvester_simplex_dual_map(d)
    assert determinant(m.matrix) == (-1) ** (d - 3)
    assert all(x == 0 for x in m.translation)
    v = paper_vertices(d)
    w = [_e(d, 1), paper_normal(d)] + [_add(_e(d, 1), _e(d, i, -2)) for i in range(2, d + 1)]
    target = [v[2], v[1], v[0]] + v[3:]
    assert [m(x) for x in w] == target
    S = sylvester_simplex(d)
    assert set(polar_dual(S).vertices) == set(w)
    assert apply_map(m, polar_dual(S)) == S


def test_nill_bounds():
    r = nill_bounds_check(sylvester_simplex(3))
    # upper bound (b_3 - 1)^2 = 42^2
    assert (r.volume, r.dual_volume, r.lower, r.upper) == (16, 16, 256, 1764)
    assert r.passed
    r = nill_bounds_check(sylvester_simplex(4))
    assert r.product == 4096 and r.lower == 3125 and r.passed
    for d in (2, 3, 4):
        assert nill_bounds_check(standard_reflexive_simplex(d)).passed
    with pytest.raises(NotReflexive):
        nill_bounds_check(make_polytope([(0, 0), (1, 0), (0, 1)]))
    with pytest.raises(NotASimplex):
        nill_bounds_check(cross_polytope(2))


def test_fixtures():
    assert F["example-1-1"].n_vertices == 3
    assert F["example-1-9"].n_vertices == 6
    assert F["cube-3"].n_vertices == 8 and is_reflexive(F["cube-3"])
