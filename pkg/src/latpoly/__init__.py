"""Exact lattice polytope toolkit: delta-vectors, polar duals, reflexivity,
prism / bipyramid / gamma constructions, unimodular equivalence and the
Sylvester family of self-dual reflexive simplices."""

from .constructions import (
    bipyramid,
    fixtures,
    gamma,
    gamma_delta_formula,
    prism01,
    prism_delta_formula,
    prism_sym,
    pyramid,
    sylvester,
    sylvester_simplex,
    sylvester_simplex_dual_map,
)
from .ehrhart import (
    check_delta_properties,
    count_points,
    delta,
    delta_vector,
    delta_vector_simplex,
    ehrhart_polynomial,
    is_symmetric,
)
from .equivalence import (
    UnimodularMap,
    apply_map,
    are_equivalent,
    classify_self_duality,
    enumerate_reflexive_2d,
    fingerprint,
)
from .polytope import (
    HalfSpace,
    Polytope,
    contains,
    facet_enumeration,
    is_reflexive,
    lattice_points,
    make_polytope,
    normalized_volume,
    polar_dual,
    vertex_facet_incidence,
)

__version__ = "0.1.0"

__all__ = [
    "apply_map",
    "are_equivalent",
    "bipyramid",
    "check_delta_properties",
    "classify_self_duality",
    "contains",
    "count_points",
    "delta",
    "delta_vector",
    "delta_vector_simplex",
    "ehrhart_polynomial",
    "enumerate_reflexive_2d",
    "facet_enumeration",
    "fingerprint",
    "fixtures",
    "gamma",
    "gamma_delta_formula",
    "HalfSpace",
    "is_reflexive",
    "is_symmetric",
    "lattice_points",
    "make_polytope",
    "normalized_volume",
    "polar_dual",
    "Polytope",
    "prism01",
    "prism_delta_formula",
    "prism_sym",
    "pyramid",
    "sylvester",
    "sylvester_simplex",
    "sylvester_simplex_dual_map",
    "UnimodularMap",
    "vertex_facet_incidence",
]
