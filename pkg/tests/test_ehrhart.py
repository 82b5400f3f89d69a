
import pytest
from hypothesis import given, strategies as st

from cyclic_ehrhart.ehrhart import ehrhart_polynomial, fan_simplices, simplex_volume, volume
from cyclic_ehrhart.errors import DomainError
from cyclic_ehrhart.numeric import ExactPolynomial
from cyclic_ehrhart.oracle import ehrhart_by_interpolation
from cyclic_ehrhart.polytope import ParameterSet, gale_facets

from conftest import random_instances


@pytest.mark.parametrize(
    "T, d, expected", [((1, 2, 3, 4), 3, 2), ((1, 3), 1, 2), ((1, 3, 4), 2, 3)]
)
def test_simplex_volume(T, d, expected):
    assert simplex_volume(T, d) == expected


def test_simplex_volume_domain():
    with pytest.raises(DomainError):
        simplex_volume((1, 2, 3, 4), 2)


@pytest.mark.parametrize(
    "T, d, expected", [((1, 2, 3, 4), 2, 4), ((1, 2, 3, 4), 1, 3), ((1, 2, 3, 4), 3, 2)]
)
def test_volume(T, d, expected):
    assert volume(T, d) == expected


def test_fan_matches_worked_decomposition():
    # C_2(1,2,3,4) splits into C_2(1,2,3) and C_2(1,3,4)
    assert fan_simplices((1, 2, 3, 4), 2) == [(1, 2, 3), (1, 3, 4)]


def test_ehrhart_examples():
    assert ehrhart_polynomial((1, 2, 3, 4), 3) == ExactPolynomial([1, 3, 4, 2])
    assert ehrhart_polynomial((-3, 5), 1) == ExactPolynomial([1, 8])
    assert ehrhart_polynomial((1, 2, 3, 4), 2) == ExactPolynomial([1, 3, 4])


@pytest.mark.parametrize("T, d", [(T, d) for T, d, _ in random_instances(40, seed=11)])
def test_volume_additivity_over_fan(T, d):
    P = ParameterSet(T)
    n = len(T)
    assert volume(P, d) == sum(simplex_volume(P.subset(s), d) for s in fan_simplices(P, d))
    # independent triangulation: cone from the last vertex instead
    other = [S + (n,) for S in gale_facets(n, d) if S[-1] != n]
    assert volume(P, d) == sum(simplex_volume(P.subset(s), d) for s in other)


@given(st.sets(st.integers(-6, 8), min_size=3, max_size=6), st.integers(1, 4), st.integers(1, 5))
def test_volume_monotone_when_extending(ts, d, gap):
    ts = sorted(ts)
    if len(ts) < d + 1:
        return
    assert volume(ts + [ts[-1] + gap], d) > volume(ts, d)
    assert volume([ts[0] - gap] + ts, d) > volume(ts, d)


@given(st.sets(st.integers(-5, 8), min_size=2, max_size=6), st.integers(-30, 30), st.integers(1, 4))
def test_translation_invariance(ts, c, d):
    ts = sorted(ts)
    if len(ts) < d + 1:
        return
    assert ehrhart_polynomial(ts, d) == ehrhart_polynomial([t + c for t in ts], d)


def test_constant_term_and_top_coefficients():
    T = (-2, 0, 3, 4, 7)
    p = ehrhart_polynomial(T, 3)
    assert p.coefficient(0) == 1
    assert p.coefficient(3) == volume(T, 3)
    assert p.coefficient(2) == volume(T, 2)


@pytest.mark.parametrize(
    "T, d", [((1, 2, 3, 4), 3), ((1, 4), 1), ((1, 2, 3, 4), 2), ((-2, 0, 1, 3, 4), 3), ((-1, 0, 2, 5), 2)]
)
def test_matches_interpolated_brute_force(T, d):
    assert ehrhart_by_interpolation(T, d) == ehrhart_polynomial(T, d)
