"""Volumes of cyclic polytopes and their Ehrhart polynomials as volume sums."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import DomainError
from .numeric import ExactPolynomial, int_det, vandermonde
from .polytope import ParameterSet, gale_facets, moment_point

__all__ = ["ehrhart_polynomial", "fan_simplices", "simplex_volume", "volume"]


def _params(T) -> ParameterSet:
    return T if isinstance(T, ParameterSet) else ParameterSet(T)


def simplex_volume(T, d: int) -> Fraction:
    """Volume of the simplex ``C_d(T)``: Vandermonde product over ``d!``."""
    T = _params(T)
    if len(T) != d + 1:
        raise DomainError(f"simplex_volume needs exactly d+1={d + 1} parameters, got {len(T)}")
    return Fraction(vandermonde(T.values), factorial(d))


def fan_simplices(T, d: int) -> list[tuple[int, ...]]:
    """Triangulation of ``C_d(T)`` by coning from vertex 1 over the facets avoiding it.

    Each simplex is a sorted 1-based index set of size ``d + 1``.
    """
    T = _params(T)
    return [(1,) + S for S in gale_facets(len(T), d) if S[0] != 1]


def volume(T, d: int) -> Fraction:
    """Exact ``d``-volume of ``C_d(T)`` from determinants of the fan simplices."""
    T = _params(T)
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if len(T) < d + 1:
        raise DomainError(f"C_{d} needs at least {d + 1} parameters, got {len(T)}")
    if len(T) == d + 1:
        return simplex_volume(T, d)
    apex = moment_point(T[0], d)
    total = 0
    for simplex in fan_simplices(T, d):
        edges = []
        for i in simplex[1:]:
            v = moment_point(T[i - 1], d)
            edges.append([a - b for a, b in zip(v, apex)])
        total += abs(int_det(edges))
    return Fraction(total, factorial(d))


def ehrhart_polynomial(T, d: int) -> ExactPolynomial:
    """``i(C_d(T), m) = sum_k Vol_k(C_k(T)) m^k`` with ``Vol_0 = 1``."""
    T = _params(T)
    if len(T) < d + 1:
        raise DomainError(f"C_{d} needs at least {d + 1} parameters, got {len(T)}")
    return ExactPolynomial([1] + [volume(T, k) for k in range(1, d + 1)])
