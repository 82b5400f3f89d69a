"""Cyclic polytopes on the moment curve: facets, half-spaces, membership.

Index sets of facets are 1-based subsets of ``{1, ..., n}`` so that they line
up with the usual ``t_1 < ... < t_n`` labelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, InvariantViolation
from .numeric import int_det

__all__ = [
    "CyclicPolytope",
    "Facet",
    "HalfSpace",
    "LatticePoint",
    "ParameterSet",
    "classify_facet",
    "contains",
    "facet_halfspace",
    "gale_facets",
    "is_gale_facet",
    "moment_point",
    "project",
]


class LatticePoint(tuple):
    """Immutable integer point; a tuple with a :meth:`last` accessor."""

    def __new__(cls, coords: Iterable[int]):
        pt = super().__new__(cls, (int(c) for c in coords))
        if len(pt) < 1:
            raise DomainError("LatticePoint needs dimension >= 1")
        return pt

    def last(self) -> int:
        return self[-1]

    def head(self) -> LatticePoint:
        """Drop the last coordinate (the projection forgetting ``x_d``)."""
        return LatticePoint(self[:-1])

    def __repr__(self):
        return f"LatticePoint({tuple(self)})"


@dataclass(frozen=True)
class ParameterSet:
    """Strictly increasing integers ``t_1 < ... < t_n``."""

    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise DomainError(f"parameters must be strictly increasing: {vals}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def shifted(self, c: int) -> ParameterSet:
        return ParameterSet(v + c for v in self.values)

    def subset(self, indices: Iterable[int]) -> ParameterSet:
        """Sub-parameter set picked by 1-based indices."""
        return ParameterSet(self.values[i - 1] for i in sorted(indices))

    def __str__(self):
        return ",".join(map(str, self.values))


def _as_params(T) -> ParameterSet:
    return T if isinstance(T, ParameterSet) else ParameterSet(T)


def moment_point(t: int, d: int) -> LatticePoint:
    """``(t, t^2, ..., t^d)``."""
    if d < 1:
        raise DomainError(f"moment curve needs d >= 1, got {d}")
    return LatticePoint(t**k for k in range(1, d + 1))


@dataclass(frozen=True)
class HalfSpace:
    """Closed half-space ``normal . x >= offset`` (inward for its polytope)."""

    normal: tuple[int, ...]
    offset: int

    def value(self, x: Sequence[int]) -> int:
        return sum(a * xi for a, xi in zip(self.normal, x)) - self.offset

    def satisfied(self, x: Sequence[int]) -> bool:
        return self.value(x) >= 0

    def dilate(self, m: int) -> HalfSpace:
        return _primitive(self.normal, self.offset * m)


def _primitive(normal: Sequence[int], offset: int) -> HalfSpace:
    g = 0
    for a in normal:
        g = gcd(g, a)
    if g == 0:
        raise DomainError("half-space normal is zero")
    g = gcd(g, offset)
    return HalfSpace(tuple(a // g for a in normal), offset // g)


@dataclass(frozen=True)
class Facet:
    index_set: tuple[int, ...]
    halfspace: HalfSpace
    sign: int


def is_gale_facet(S: Iterable[int], n: int) -> bool:
    """Gale evenness: between any two indices outside ``S`` lies an even number of ``S``."""
    inside = [False] * (n + 2)
    for i in S:
        inside[i] = True
    outside = [i for i in range(1, n + 1) if not inside[i]]
    for a, b in zip(outside, outside[1:]):
        # checking consecutive outside pairs is enough: counts add up
        if (b - a - 1) % 2:
            return False
    return True


def gale_facets(T, d: int) -> list[tuple[int, ...]]:
    """All facet index sets of ``C_d(T)``, lexicographically sorted.

    ``T`` may be a :class:`ParameterSet`, a sequence of parameters, or just
    the number of parameters ``n``; the answer depends only on ``n``.
    """
    n = T if isinstance(T, int) else len(T)
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if n <= d:
        raise DomainError(f"need more than d={d} parameters, got {n}")
    return [S for S in combinations(range(1, n + 1), d) if is_gale_facet(S, n)]


class CyclicPolytope:
    """The dilate ``m * C_d(T)``.

    ``T`` stays canonical; the dilation is an attribute and :attr:`vertices`
    returns the scaled points ``m * nu_d(t_i)``.
    """

    def __init__(self, T, d: int, m: int = 1):
        T = _as_params(T)
        if d < 1:
            raise DomainError(f"dimension must be >= 1, got {d}")
        if len(T) < d + 1:
            raise DomainError(f"C_{d} needs at least {d + 1} parameters, got {len(T)}")
        if m < 1:
            raise DomainError(f"dilation must be >= 1, got {m}")
        self.T = T
        self.d = d
        self.m = m

    def __repr__(self):
        return f"CyclicPolytope(T=({self.T}), d={self.d}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, CyclicPolytope):
            return NotImplemented
        return (self.T, self.d, self.m) == (other.T, other.d, other.m)

    def __hash__(self):
        return hash((self.T, self.d, self.m))

    @property
    def n(self) -> int:
        return len(self.T)

    @cached_property
    def vertices(self) -> tuple[LatticePoint, ...]:
        return tuple(LatticePoint(self.m * c for c in moment_point(t, self.d)) for t in self.T)

    def dilate(self, m: int) -> CyclicPolytope:
        return CyclicPolytope(self.T, self.d, self.m * m)

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        out = []
        for S in gale_facets(self.n, self.d):
            h = facet_halfspace(self, S)
            out.append(Facet(S, h, _sign_from_normal(h)))
        return tuple(out)

    @property
    def halfspaces(self) -> tuple[HalfSpace, ...]:
        return tuple(f.halfspace for f in self.facets)

    def bounding_box(self) -> list[tuple[int, int]]:
        """Integer ``[lo, hi]`` per coordinate from vertex extremes."""
        box = []
        for k in range(self.d):
            coords = [v[k] for v in self.vertices]
            box.append((min(coords), max(coords)))
        return box


def _hyperplane_through(points: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Integer normal ``a`` and offset ``b`` with ``a . p = b`` for all ``d`` points."""
    d = len(points[0])
    p0 = points[0]
    diffs = [[p[k] - p0[k] for k in range(d)] for p in points[1:]]
    normal = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in diffs]
        normal.append((-1) ** j * int_det(minor))
    offset = sum(a * x for a, x in zip(normal, p0))
    return normal, offset


def facet_halfspace(P: CyclicPolytope, S: Sequence[int]) -> HalfSpace:
    """Primitive inward half-space of the facet spanned by the vertices indexed by ``S``.

    Orientation is certified against the exact vertex centroid; if some vertex
    lies strictly on each side, ``S`` is not a facet and :class:`DomainError`
    is raised.
    """
    S = tuple(sorted(S))
    if len(S) != P.d or len(set(S)) != P.d or not all(1 <= i <= P.n for i in S):
        raise DomainError(f"{S} is not a {P.d}-subset of 1..{P.n}")
    verts = P.vertices
    normal, offset = _hyperplane_through([verts[i - 1] for i in S])
    if not any(normal):
        raise DomainError(f"vertices {S} are affinely dependent")
    values = [sum(a * x for a, x in zip(normal, v)) - offset for v in verts]
    centroid_side = sum(values)  # n * (normal . centroid - offset)
    if centroid_side == 0:
        raise InvariantViolation(f"centroid lies on hyperplane of {S}")
    if centroid_side < 0:
        normal = [-a for a in normal]
        offset = -offset
        values = [-v for v in values]
    if any(v < 0 for v in values):
        raise DomainError(f"{S} is not a facet of {P!r}")
    return _primitive(normal, offset)


def _sign_from_normal(h: HalfSpace) -> int:
    last = h.normal[-1]
    if last == 0:
        raise InvariantViolation(f"vertical facet with normal {h.normal}")
    # inward normal pointing up: polytope lies above, so the facet is on the lower envelope
    return -1 if last > 0 else 1


def classify_facet(P: CyclicPolytope, S: Sequence[int]) -> int:
    """+1 for a facet on the upper envelope, -1 for one on the lower envelope."""
    return _sign_from_normal(facet_halfspace(P, S))


def contains(P: CyclicPolytope, x: Sequence[int]) -> bool:
    """Closed membership of the lattice point ``x`` in ``m * C_d(T)``."""
    if len(x) != P.d:
        raise DomainError(f"point has dimension {len(x)}, polytope has {P.d}")
    return all(h.satisfied(x) for h in P.halfspaces)


def project(P: CyclicPolytope) -> CyclicPolytope:
    """Forget the last coordinate: ``m * C_d(T) -> m * C_{d-1}(T)``."""
    if P.d < 2:
        raise DomainError("cannot project a 1-dimensional cyclic polytope")
    return CyclicPolytope(P.T, P.d - 1, P.m)
