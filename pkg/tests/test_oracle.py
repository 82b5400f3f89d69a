from fractions import Fraction

import pytest

from cyclic_ehrhart.errors import BudgetExceeded, DomainError
from cyclic_ehrhart.numeric import ExactPolynomial
from cyclic_ehrhart.oracle import (
    BUDGET_ENV,
    count_by_fibers,
    ehrhart_by_interpolation,
    enumerate_lattice,
    fiber_extremes,
    hull_omega_lattice,
    omega_count_direct,
    omega_lattice_set,
)
from cyclic_ehrhart.polytope import CyclicPolytope, contains, moment_point

from conftest import random_instances


def test_enumerate_examples():
    assert enumerate_lattice((1, 2, 3, 4), 3, 1).count == 10
    res = enumerate_lattice((1, 4), 1, 1, points=True)
    assert res.count == 4 and res.points == [(1,), (2,), (3,), (4,)]
    # the chord midpoint (2, 5) is the only non-vertex point
    res = enumerate_lattice((1, 2, 3), 2, 1, points=True)
    assert res.points == [(1, 1), (2, 4), (2, 5), (3, 9)]
    assert enumerate_lattice((-3, 1, 2, 6), 2, 0, points=True).points == [(0, 0)]


def test_points_sorted_and_inside():
    T, d, m = (-1, 0, 2, 3), 3, 2
    P = CyclicPolytope(T, d, m)
    pts = enumerate_lattice(T, d, m, points=True).points
    assert pts == sorted(pts) and len(set(pts)) == len(pts)
    assert all(contains(P, p) for p in pts)


@pytest.mark.parametrize("T, d, m", [(T, d, m) for T, d, m in random_instances(25, seed=3, dmax=3, lo=-3, hi=5, mmax=2)])
def test_box_scan_agrees_with_fiber_scan(T, d, m):
    a = enumerate_lattice(T, d, m, points=True, scan="box")
    b = enumerate_lattice(T, d, m, points=True)
    assert a == b


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_lattice((0, 5, 10, 20), 3, 3, budget=100)
    assert BudgetExceeded(5, 2).cells == 5


def test_budget_env(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "10")
    with pytest.raises(BudgetExceeded):
        enumerate_lattice((0, 5, 10, 20), 3, 1)


def test_domain_errors():
    with pytest.raises(DomainError):
        enumerate_lattice((1, 2, 3), 2, -1)
    with pytest.raises(DomainError):
        enumerate_lattice((1, 2, 3), 3, 1)
    with pytest.raises(DomainError):
        enumerate_lattice((1, 2, 3), 2, 1, scan="diagonal")


def test_fiber_extremes_examples():
    lo, hi = fiber_extremes((2,), (1, 2, 3), 2, 1)
    assert lo == (2, 4) and hi == (2, 5)
    lo, hi = fiber_extremes((2,), (1, 2, 3, 4), 2, 1)
    assert lo == (2, 4) and hi == (2, 6)
    assert fiber_extremes((9,), (1, 2, 3, 4), 2, 1) is None
    assert fiber_extremes((2, 4), (1, 2, 3, 4), 3, 1) == ((2, 4, 8), (2, 4, 8))
    # (2,5) = (nu(1) + nu(3))/2 = nu(1)/3 + nu(2)/2 + nu(4)/6
    lo, hi = fiber_extremes((2, 5), (1, 2, 3, 4), 3, 1)
    assert lo[-1] == 14 and hi[-1] == 15
    assert all(isinstance(c, Fraction) for c in lo)
    with pytest.raises(DomainError):
        fiber_extremes((1, 1), (1, 2, 3), 2, 1)


@pytest.mark.parametrize("T, d, m", [(T, d, m) for T, d, m in random_instances(20, seed=7, dmax=3, lo=-4, hi=6, mmax=2) if d >= 2])
def test_fiber_extremes_integral_on_lattice(T, d, m):
    for y in enumerate_lattice(T, d - 1, m, points=True).points:
        lo, hi = fiber_extremes(y, T, d, m)
        assert lo[-1].denominator == 1 and hi[-1].denominator == 1
        assert lo[-1] <= hi[-1]


def test_omega_count_examples():
    assert omega_count_direct((1, 2, 3, 4), 3, 1) == 2
    assert omega_count_direct((1, 2, 3, 4), 3, 2) == 16
    assert omega_count_direct((1, 4), 1, 1) == 3
    assert omega_lattice_set((1, 4), 1, 1) == {(2,), (3,), (4,)}
    assert omega_lattice_set((1, 2, 3), 2, 1) == {(2, 5)}


@pytest.mark.parametrize("T, d, m", [(T, d, m) for T, d, m in random_instances(30, seed=19, dmax=4, lo=-4, hi=7, mmax=3) if d >= 2])
def test_recursion_identity(T, d, m):
    lower = enumerate_lattice(T, d - 1, m).count
    assert enumerate_lattice(T, d, m).count == lower + omega_count_direct(T, d, m)
    assert count_by_fibers(T, d, m) == enumerate_lattice(T, d, m).count


def test_interpolation_examples():
    assert ehrhart_by_interpolation((1, 2, 3, 4), 3) == ExactPolynomial([1, 3, 4, 2])
    assert ehrhart_by_interpolation((2, 7), 1) == ExactPolynomial([1, 5])


@pytest.mark.parametrize("T, d, m", [((1, 2, 3, 4), 3, 1), ((1, 2, 3), 2, 2), ((-2, 0, 1, 3), 3, 1), ((0, 1, 3, 4), 2, 1)])
def test_hull_oracle_agrees_with_halfspaces(T, d, m):
    verts = [tuple(m * c for c in moment_point(t, d)) for t in T]
    assert hull_omega_lattice(verts) == omega_lattice_set(T, d, m)


def test_hull_lower_dimensional():
    # a vertical segment in the plane
    assert hull_omega_lattice([(1, 0), (1, 3)]) == {(1, 1), (1, 2), (1, 3)}
    # a flat triangle in space has an empty nonnegative part
    assert hull_omega_lattice([(0, 0, 0), (2, 0, 0), (0, 2, 0)]) == set()
