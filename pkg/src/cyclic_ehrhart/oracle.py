"""Brute-force ground truth: lattice enumeration, fiber extremes, Omega counts.

Nothing here uses volumes, Vandermonde products or the box decomposition;
everything is derived from the facet half-spaces (or, for arbitrary hulls,
from an exact LP over the vertex list).
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import combinations, product
from math import prod
from typing import NamedTuple, Sequence

from . import _kernels
from .errors import BudgetExceeded, DomainError, InvariantViolation
from .numeric import ExactPolynomial, poly_interpolate
from .polytope import CyclicPolytope, LatticePoint, ParameterSet, contains

__all__ = [
    "BUDGET_ENV",
    "DEFAULT_BUDGET",
    "LatticeEnumeration",
    "count_by_fibers",
    "ehrhart_by_interpolation",
    "enumerate_lattice",
    "fiber_extremes",
    "hull_omega_lattice",
    "level_system",
    "omega_count_direct",
    "omega_lattice_set",
]

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "CYCLIC_EHRHART_BUDGET"


def current_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


class LatticeEnumeration(NamedTuple):
    count: int
    points: list[LatticePoint] | None


def _params(T) -> ParameterSet:
    return T if isinstance(T, ParameterSet) else ParameterSet(T)


def level_system(T, d: int, m: int) -> _kernels.LevelSystem:
    """Half-spaces of ``m * C_k(T)`` for ``k = 1..d`` with the bounding box of the top one."""
    T = _params(T)
    normals, offsets = [], []
    for k in range(1, d + 1):
        hs = CyclicPolytope(T, k, m).halfspaces
        normals.append([h.normal for h in hs])
        offsets.append([h.offset for h in hs])
    box = CyclicPolytope(T, d, m).bounding_box()
    return _kernels.system_from_halfspaces(normals, offsets, box)


def _box_cells(box, upto: int) -> int:
    return prod(hi - lo + 1 for lo, hi in box[:upto])


def enumerate_lattice(
    T,
    d: int,
    m: int,
    *,
    points: bool = False,
    budget: int | None = None,
    backend: str | None = None,
    scan: str = "fibers",
) -> LatticeEnumeration:
    """Count (and optionally list) the lattice points of ``m * C_d(T)``.

    ``scan="fibers"`` walks the integer bounding box one coordinate at a
    time, pruning prefixes that leave the projected polytope and resolving
    the last coordinate by exact interval intersection; the budget bounds the
    number of prefix cells. ``scan="box"`` tests every cell of the full box
    with :func:`contains` and is only meant for tiny instances.
    Points come back sorted lexicographically.
    """
    T = _params(T)
    if m < 0:
        raise DomainError(f"dilation must be >= 0, got {m}")
    if m == 0:
        CyclicPolytope(T, d)  # validates T, d
        origin = LatticePoint([0] * d)
        return LatticeEnumeration(1, [origin] if points else None)
    budget = current_budget(budget)
    P = CyclicPolytope(T, d, m)
    box = P.bounding_box()

    if scan == "box":
        cells = _box_cells(box, d)
        if cells > budget:
            raise BudgetExceeded(cells, budget)
        found = [
            LatticePoint(x)
            for x in product(*(range(lo, hi + 1) for lo, hi in box))
            if contains(P, x)
        ]
        return LatticeEnumeration(len(found), found if points else None)
    if scan != "fibers":
        raise DomainError(f"unknown scan {scan!r}")

    cells = _box_cells(box, d - 1)
    if cells > budget:
        raise BudgetExceeded(cells, budget)
    system = level_system(T, d, m)
    res = _kernels.scan(system, backend)
    if not points:
        return LatticeEnumeration(res.closed, None)
    if res.closed > budget:
        raise BudgetExceeded(res.closed, budget)
    pts = [LatticePoint(x) for x in _kernels.lattice_points(system)]
    return LatticeEnumeration(res.closed, pts)


def fiber_extremes(y: Sequence[int], T, d: int, m: int):
    """Lowest and highest points of ``m * C_d(T)`` above ``y``, or ``None``.

    Both points are tuples of :class:`Fraction`; over lattice ``y`` they are
    integral for cyclic polytopes.
    """
    if d < 2:
        raise DomainError("fiber_extremes needs d >= 2")
    if len(y) != d - 1:
        raise DomainError(f"y has dimension {len(y)}, expected {d - 1}")
    T = _params(T)
    if not contains(CyclicPolytope(T, d - 1, m), y):
        return None
    lo = hi = None
    for h in CyclicPolytope(T, d, m).halfspaces:
        a = h.normal[-1]
        rem = h.offset - sum(ai * yi for ai, yi in zip(h.normal, y))
        if a == 0:
            raise InvariantViolation(f"vertical facet {h}")
        bound = Fraction(rem, a)
        if a > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    base = tuple(Fraction(v) for v in y)
    return base + (lo,), base + (hi,)


def omega_count_direct(T, d: int, m: int, *, backend: str | None = None) -> int:
    """``sum over lattice y`` of ``l(p(y)) - l(n(y))``: lattice points of the nonnegative part."""
    T = _params(T)
    CyclicPolytope(T, d, m)
    res = _kernels.scan(level_system(T, d, m), backend)
    if res.nonintegral:
        raise InvariantViolation(f"{res.nonintegral} lattice fibers end at non-lattice points")
    return res.omega


def omega_lattice_set(T, d: int, m: int) -> set[tuple[int, ...]]:
    """Lattice points of ``m * C_d(T)`` minus its lower envelope."""
    T = _params(T)
    CyclicPolytope(T, d, m)
    return set(_kernels.lattice_points(level_system(T, d, m), half_open=True))


def ehrhart_by_interpolation(T, d: int, *, budget: int | None = None, backend: str | None = None) -> ExactPolynomial:
    """Interpolate brute-force counts at ``m = 0..d``."""
    T = _params(T)
    samples = [(m, enumerate_lattice(T, d, m, budget=budget, backend=backend).count) for m in range(d + 1)]
    return poly_interpolate(samples)


# ------------------------------------------------------------ arbitrary hulls


def _solve_unique(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Unique solution of ``sum_i lam_i * columns[i] = rhs`` or ``None``."""
    rows = len(rhs)
    k = len(columns)
    M = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(rhs[i])] for i in range(rows)]
    piv_row = 0
    for col in range(k):
        sel = next((r for r in range(piv_row, rows) if M[r][col] != 0), None)
        if sel is None:
            return None
        M[piv_row], M[sel] = M[sel], M[piv_row]
        p = M[piv_row][col]
        M[piv_row] = [v / p for v in M[piv_row]]
        for r in range(rows):
            if r != piv_row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[piv_row])]
        piv_row += 1
    if any(M[r][k] != 0 for r in range(piv_row, rows)):
        return None
    return [M[i][k] for i in range(k)]


def _hull_fiber(vertices, y):
    """Exact min/max of the last coordinate over ``conv(vertices)`` above ``y``."""
    D = len(vertices[0])
    target = [Fraction(v) for v in y] + [Fraction(1)]
    lo = hi = None
    for size in range(1, D + 1):
        for sub in combinations(vertices, size):
            cols = [list(v[:-1]) + [1] for v in sub]
            lam = _solve_unique(cols, target)
            if lam is None or any(l < 0 for l in lam):
                continue
            z = sum(l * v[-1] for l, v in zip(lam, sub))
            lo = z if lo is None else min(lo, z)
            hi = z if hi is None else max(hi, z)
    return lo, hi


def hull_omega_lattice(vertices: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    """Lattice points of ``Omega(conv(vertices))`` for any finite integer point set.

    Works for lower-dimensional hulls too. Cost grows with the bounding box
    of the projection and the number of vertex subsets, so keep inputs small.
    """
    verts = [tuple(int(c) for c in v) for v in vertices]
    D = len(verts[0])
    if D < 2:
        lo, hi = min(v[0] for v in verts), max(v[0] for v in verts)
        return {(z,) for z in range(lo + 1, hi + 1)}
    ranges = [range(min(v[k] for v in verts), max(v[k] for v in verts) + 1) for k in range(D - 1)]
    out = set()
    for y in product(*ranges):
        lo, hi = _hull_fiber(verts, y)
        if lo is None:
            continue
        for z in range(int(lo // 1) + 1, int(hi // 1) + 1):
            out.add(tuple(y) + (z,))
    return out


def count_by_fibers(T, d: int, m: int, *, backend: str | None = None) -> int:
    """``i(C_d(T), m) = 1 + sum_k |L(Omega(m C_k(T)))|``, each term by fiber scanning."""
    T = _params(T)
    if m == 0:
        return 1
    return 1 + sum(omega_count_direct(T, k, m, backend=backend) for k in range(1, d + 1))
