"""Exact Ehrhart polynomials of integral cyclic polytopes, with brute-force oracles."""

from .decomp import (
    BoxP,
    H_closed,
    H_signed,
    SignedLatticeMultiset,
    UnimodularAffineMap,
    apply_map,
    box_R_count,
    build_phi_full,
    build_phi_last,
    count_signed_boxes,
    facet_sign,
    h_count,
    invert_map,
    omega_multiset,
    omega_signed_count,
)
from .ehrhart import ehrhart_polynomial, fan_simplices, simplex_volume, volume
from .errors import BudgetExceeded, DomainError, InvariantViolation
from .numeric import ExactPolynomial, elem_sym, poly_eval, poly_interpolate, vandermonde
from .oracle import (
    ehrhart_by_interpolation,
    enumerate_lattice,
    fiber_extremes,
    omega_count_direct,
    omega_lattice_set,
)
from .polytope import (
    CyclicPolytope,
    Facet,
    HalfSpace,
    LatticePoint,
    ParameterSet,
    classify_facet,
    contains,
    facet_halfspace,
    gale_facets,
    moment_point,
    project,
)

__version__ = "0.1.0"

__all__ = [
    "apply_map",
    "box_R_count",
    "BoxP",
    "BudgetExceeded",
    "build_phi_full",
    "build_phi_last",
    "classify_facet",
    "contains",
    "count_signed_boxes",
    "CyclicPolytope",
    "DomainError",
    "ehrhart_by_interpolation",
    "ehrhart_polynomial",
    "elem_sym",
    "enumerate_lattice",
    "ExactPolynomial",
    "Facet",
    "facet_halfspace",
    "facet_sign",
    "fan_simplices",
    "fiber_extremes",
    "gale_facets",
    "H_closed",
    "h_count",
    "H_signed",
    "HalfSpace",
    "InvariantViolation",
    "invert_map",
    "LatticePoint",
    "moment_point",
    "omega_count_direct",
    "omega_lattice_set",
    "omega_multiset",
    "omega_signed_count",
    "ParameterSet",
    "poly_eval",
    "poly_interpolate",
    "project",
    "SignedLatticeMultiset",
    "simplex_volume",
    "UnimodularAffineMap",
    "vandermonde",
    "volume",
]
