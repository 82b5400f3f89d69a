"""Unimodular maps, recursive boxes and the signed box decomposition of Omega.

For a simplex ``C_d(t_1 < ... < t_{d+1})`` the lattice points of the
nonnegative part of ``m * C_d(T)`` are a signed sum over ``sigma in S_d`` of
images of half-open boxes ``R_s`` under inverse unimodular maps; counting
those boxes with the nested sum ``h`` gives ``m^d * vandermonde(T) / d!``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .ehrhart import fan_simplices
from .errors import DomainError
from .numeric import elem_sym_all, int_det, signed_permutations
from .polytope import LatticePoint, ParameterSet

__all__ = [
    "BoxP",
    "SignedLatticeMultiset",
    "UnimodularAffineMap",
    "H_closed",
    "H_signed",
    "apply_map",
    "box_R_count",
    "build_phi_full",
    "build_phi_last",
    "count_signed_boxes",
    "decomposition_table",
    "facet_sign",
    "h_count",
    "invert_map",
    "omega_multiset",
    "omega_signed_count",
    "region_points",
]


# ------------------------------------------------------------ unimodular maps


@dataclass(frozen=True)
class UnimodularAffineMap:
    """``x -> matrix @ x + translation`` with an integer lower unitriangular matrix."""

    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]

    def __post_init__(self):
        d = len(self.matrix)
        if len(self.translation) != d or any(len(row) != d for row in self.matrix):
            raise DomainError("matrix/translation shape mismatch")
        for i, row in enumerate(self.matrix):
            if row[i] != 1 or any(row[j] != 0 for j in range(i + 1, d)):
                raise DomainError(f"row {i} is not lower unitriangular: {row}")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def det(self) -> int:
        return int_det(self.matrix)

    def __call__(self, x: Sequence[int]) -> LatticePoint:
        return apply_map(self, x)

    def inverse(self) -> UnimodularAffineMap:
        return invert_map(self)

    def compose(self, inner: UnimodularAffineMap) -> UnimodularAffineMap:
        """``self o inner``."""
        if inner.dim != self.dim:
            raise DomainError("cannot compose maps of different dimension")
        A, B = self.matrix, inner.matrix
        d = self.dim
        M = tuple(tuple(sum(A[i][k] * B[k][j] for k in range(d)) for j in range(d)) for i in range(d))
        t = tuple(sum(A[i][k] * inner.translation[k] for k in range(d)) + self.translation[i] for i in range(d))
        return UnimodularAffineMap(M, t)

    def embed(self, dim: int) -> UnimodularAffineMap:
        """Act on the first ``self.dim`` coordinates of ``R^dim``, identity elsewhere."""
        d = self.dim
        if dim < d:
            raise DomainError(f"cannot embed a {d}-map into dimension {dim}")
        rows = [tuple(self.matrix[i]) + (0,) * (dim - d) for i in range(d)]
        rows += [tuple(1 if j == i else 0 for j in range(dim)) for i in range(d, dim)]
        return UnimodularAffineMap(tuple(rows), tuple(self.translation) + (0,) * (dim - d))

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.matrix, dtype=np.int64), np.array(self.translation, dtype=np.int64)


def apply_map(f: UnimodularAffineMap, x: Sequence[int]) -> LatticePoint:
    if len(x) != f.dim:
        raise DomainError(f"point has dimension {len(x)}, map has {f.dim}")
    return LatticePoint(
        sum(a * xi for a, xi in zip(row, x)) + t for row, t in zip(f.matrix, f.translation)
    )


def invert_map(f: UnimodularAffineMap) -> UnimodularAffineMap:
    """Exact inverse; forward substitution keeps it integral and unitriangular."""
    d = f.dim
    A = f.matrix
    inv = [[0] * d for _ in range(d)]
    for j in range(d):
        inv[j][j] = 1
        for i in range(j + 1, d):
            inv[i][j] = -sum(A[i][k] * inv[k][j] for k in range(j, i))
    t = [-sum(inv[i][k] * f.translation[k] for k in range(d)) for i in range(d)]
    return UnimodularAffineMap(tuple(map(tuple, inv)), tuple(t))


def build_phi_full(rs: Sequence[int], m: int = 1) -> UnimodularAffineMap:
    """Map sending ``nu_d(t)`` to ``(t-r_1, (t-r_1)(t-r_2), ...)`` (times ``m`` shifts when dilated).

    Row ``i`` holds ``(-1)^(i-j) e_{i-j}(r_1..r_i)``; the translation is
    ``m * ((-1)^i e_i(r_1..r_i))_i``.
    """
    rs = [int(r) for r in rs]
    if not rs:
        raise DomainError("build_phi_full needs at least one parameter")
    d = len(rs)
    rows, shift = [], []
    for i in range(1, d + 1):
        e = elem_sym_all(rs[:i])
        rows.append(tuple((-1) ** (i - j) * e[i - j] if j <= i else 0 for j in range(1, d + 1)))
        shift.append(m * (-1) ** i * e[i])
    return UnimodularAffineMap(tuple(rows), tuple(shift))


def build_phi_last(rs: Sequence[int], m: int = 1) -> UnimodularAffineMap:
    """Map changing only the last coordinate: ``nu_d(t) -> (t, ..., t^(d-1), prod(t - r_i))``.

    Symmetric in ``rs``.
    """
    rs = [int(r) for r in rs]
    if not rs:
        raise DomainError("build_phi_last needs at least one parameter")
    d = len(rs)
    e = elem_sym_all(rs)
    rows = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d - 1)]
    rows.append(tuple((-1) ** (d - j) * e[d - j] for j in range(1, d + 1)))
    shift = (0,) * (d - 1) + (m * (-1) ** d * e[d],)
    return UnimodularAffineMap(tuple(rows), shift)


# ---------------------------------------------------------------- facet signs


def facet_sign(k: int, d: int) -> int:
    """Sign of the facet of a simplex ``C_d(T)`` that omits vertex ``k`` (1-based)."""
    if not 1 <= k <= d + 1:
        raise DomainError(f"facet index {k} out of range 1..{d + 1}")
    if k == d + 1:
        return -1
    return -1 if (d - k) % 2 else 1


# ------------------------------------------------------------- nested sums


def _check_nonneg(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(v) for v in a)
    if any(v < 0 for v in a):
        raise DomainError(f"h needs nonnegative arguments, got {a}")
    return a


@lru_cache(maxsize=1 << 16)
def _h(a: tuple[int, ...]) -> int:
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0]
    last = a[-1]

    def g(y):  # h(y, a_n): innermost sum done in closed form
        return last * y * (y + 1) // 2

    # tables G_j(y) = h(y, a_{j+1}, ..., a_n) for y <= a_1 * ... * a_j, built bottom-up
    for j in range(n - 2, 0, -1):
        limit = prod(a[:j])
        step = a[j]
        table = [0] * (limit + 1)
        acc = 0
        for y in range(1, limit + 1):
            acc += g(step * y)
            table[y] = acc
        g = table.__getitem__
    return g(a[0])


def h_count(a: Sequence[int]) -> int:
    """``sum_{x_1=1}^{a_1} sum_{x_2=1}^{a_2 x_1} ... 1`` via ``h(a) = sum_x h(a_2 x, a_3, ...)``."""
    return _h(_check_nonneg(a))


def H_closed(m: int, a: Sequence[int]) -> Fraction:
    """``m^n / n! * prod a_i * prod_{i<j} (a_i - a_j)``."""
    a = _check_nonneg(a)
    n = len(a)
    out = Fraction(m**n, factorial(n)) * prod(a)
    for i in range(n):
        for j in range(i + 1, n):
            out *= a[i] - a[j]
    return out


def H_signed(m: int, a: Sequence[int]) -> int:
    """Alternating sum of ``h(m a_s1, a_s2, ..., a_sn)`` over all permutations."""
    a = _check_nonneg(a)
    total = 0
    for perm, sign in signed_permutations(len(a)):
        args = [a[p] for p in perm]
        if args:
            args[0] *= m
        total += sign * h_count(args)
    return total


# ---------------------------------------------------------------------- boxes


@dataclass(frozen=True)
class BoxP:
    """``P_s = {x : 0 <= x_i <= s_i x_{i-1}}`` with ``x_0 = 1``; ``R_s`` is the part with ``x_d > 0``."""

    s: tuple[int, ...]

    def __post_init__(self):
        if not self.s or any(v < 1 for v in self.s):
            raise DomainError(f"box parameters must be positive, got {self.s}")

    @property
    def d(self) -> int:
        return len(self.s)

    def contains(self, x: Sequence[int]) -> bool:
        prev = 1
        for si, xi in zip(self.s, x):
            if not 0 <= xi <= si * prev:
                return False
            prev = xi
        return True

    def region_contains(self, x: Sequence[int]) -> bool:
        return self.contains(x) and x[-1] > 0

    def vertices(self) -> list[LatticePoint]:
        out = [LatticePoint([0] * self.d)]
        acc = 1
        coords = []
        for si in self.s:
            acc *= si
            coords.append(acc)
            out.append(LatticePoint(coords + [0] * (self.d - len(coords))))
        return out

    def dilate(self, m: int) -> BoxP:
        return BoxP((m * self.s[0],) + self.s[1:])

    def region_count(self) -> int:
        return h_count(self.s)


def box_R_count(s: Sequence[int], m: int = 1) -> int:
    """Lattice points of ``m * R_s = R_{(m s_1, s_2, ...)}``."""
    s = tuple(int(v) for v in s)
    if not s or any(v < 1 for v in s):
        raise DomainError(f"box parameters must be positive, got {s}")
    return h_count((m * s[0],) + s[1:])


def region_points(s: Sequence[int], m: int = 1) -> np.ndarray:
    """Lattice points of ``m * R_s`` as an int64 array, lexicographically sorted.

    Generated from the loop bounds ``1 <= x_1 <= m s_1``, ``1 <= x_i <= s_i x_{i-1}``.
    """
    s = tuple(int(v) for v in s)
    pts = np.arange(1, m * s[0] + 1, dtype=np.int64).reshape(-1, 1)
    for si in s[1:]:
        count = si * pts[:, -1]
        total = int(count.sum())
        start = np.repeat(np.cumsum(count) - count, count)
        col = np.arange(total, dtype=np.int64) - start + 1
        pts = np.column_stack([np.repeat(pts, count, axis=0), col])
    return pts


# --------------------------------------------------------- signed multisets


class SignedLatticeMultiset(Mapping):
    """Finite map from lattice points to nonzero integer multiplicities."""

    __slots__ = ("_data",)

    def __init__(self, entries: Mapping[tuple, int] | Iterable[tuple[tuple, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[tuple, int] = defaultdict(int)
        for pt, mult in items:
            data[tuple(int(c) for c in pt)] += int(mult)
        self._data = {pt: v for pt, v in data.items() if v}

    @classmethod
    def _from_nonzero(cls, data: dict) -> SignedLatticeMultiset:
        out = cls.__new__(cls)
        out._data = data
        return out

    @classmethod
    def indicator(cls, points: Iterable[Sequence[int]]) -> SignedLatticeMultiset:
        return cls((tuple(p), 1) for p in set(map(tuple, points)))

    def __getitem__(self, pt):
        return self._data.get(tuple(pt), 0)

    def __contains__(self, pt):
        return tuple(pt) in self._data

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __add__(self, other: SignedLatticeMultiset) -> SignedLatticeMultiset:
        return SignedLatticeMultiset(list(self._data.items()) + list(other._data.items()))

    def __neg__(self) -> SignedLatticeMultiset:
        return SignedLatticeMultiset({p: -v for p, v in self._data.items()})

    def __sub__(self, other: SignedLatticeMultiset) -> SignedLatticeMultiset:
        return self + (-other)

    def __mul__(self, k: int) -> SignedLatticeMultiset:
        return SignedLatticeMultiset({p: k * v for p, v in self._data.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, SignedLatticeMultiset):
            return self._data == other._data
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"SignedLatticeMultiset({len(self._data)} points, mass {self.mass()})"

    def mass(self) -> int:
        return sum(self._data.values())

    def support(self) -> set[tuple[int, ...]]:
        return set(self._data)

    def multiplicities(self) -> set[int]:
        return set(self._data.values())

    def is_indicator(self) -> bool:
        return all(v == 1 for v in self._data.values())

    def mapped(self, f: UnimodularAffineMap) -> SignedLatticeMultiset:
        return SignedLatticeMultiset((apply_map(f, p), v) for p, v in self._data.items())


# ------------------------------------------------------- simplex decomposition


def _simplex_params(T, d: int) -> ParameterSet:
    T = T if isinstance(T, ParameterSet) else ParameterSet(T)
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if len(T) != d + 1:
        raise DomainError(f"need exactly d+1={d + 1} parameters, got {len(T)}")
    return T


def _box_terms(T: ParameterSet, d: int) -> Iterator[tuple[tuple[int, ...], int, tuple[int, ...]]]:
    """``(sigma, sign, s)`` with ``s_i = t_{d+1} - t_{sigma(i)}``; ``sigma`` is 0-based."""
    top = T[d]
    for perm, sign in signed_permutations(d):
        yield perm, sign, tuple(top - T[p] for p in perm)


def omega_signed_count(T, d: int, m: int = 1) -> int:
    """Signed sum of box counts; equals ``m^d vandermonde(T) / d!``."""
    T = _simplex_params(T, d)
    return sum(sign * box_R_count(s, m) for _, sign, s in _box_terms(T, d))


def decomposition_table(T, d: int, m: int = 1) -> list[dict]:
    """One row per permutation: 1-based permutation, sign, dilated box parameters, box count."""
    T = _simplex_params(T, d)
    rows = []
    for perm, sign, s in _box_terms(T, d):
        rows.append(
            {
                "permutation": tuple(p + 1 for p in perm),
                "sign": sign,
                "box": (m * s[0],) + s[1:],
                "count": box_R_count(s, m),
            }
        )
    return rows


def omega_multiset(T, d: int, m: int = 1) -> SignedLatticeMultiset:
    """Signed union over ``sigma`` of ``phi_{m, t_sigma}^{-1}(m R_s)`` as a lattice multiset.

    Cost is ``d!`` times the box sizes; meant for small instances.
    """
    T = _simplex_params(T, d)
    chunks, weights = [], []
    for perm, sign, s in _box_terms(T, d):
        inv = invert_map(build_phi_full([T[p] for p in perm], m))
        pts = region_points(s, m)
        if pts.shape[0] == 0:
            continue
        if _int64_safe(inv, pts):
            A, t = inv.as_arrays()
            chunks.append(pts @ A.T + t)
        else:
            chunks.append(np.array([apply_map(inv, p) for p in pts.tolist()], dtype=object))
        weights.append(np.full(pts.shape[0], sign, dtype=np.int64))
    if not chunks:
        return SignedLatticeMultiset()
    if any(c.dtype == object for c in chunks):
        acc: dict[tuple, int] = defaultdict(int)
        for c, w in zip(chunks, weights):
            for p, v in zip(c.tolist(), w.tolist()):
                acc[tuple(p)] += v
        return SignedLatticeMultiset(acc)
    allpts = np.concatenate(chunks)
    allw = np.concatenate(weights)
    uniq, inverse = np.unique(allpts, axis=0, return_inverse=True)
    mult = np.zeros(uniq.shape[0], dtype=np.int64)
    np.add.at(mult, inverse.reshape(-1), allw)
    keep = mult != 0
    return SignedLatticeMultiset._from_nonzero(
        dict(zip(map(tuple, uniq[keep].tolist()), mult[keep].tolist()))
    )


def _int64_safe(f: UnimodularAffineMap, pts: np.ndarray) -> bool:
    reach = int(np.abs(pts).max()) if pts.size else 0
    worst = max(
        abs(t) + sum(abs(a) for a in row) * reach for row, t in zip(f.matrix, f.translation)
    )
    return worst < 2**62


def count_signed_boxes(T, d: int, m: int) -> int:
    """``i(C_d(T), m)`` as ``1 + sum_k sum_{fan simplices S of C_k(T)} omega_signed_count(S, k, m)``."""
    T = T if isinstance(T, ParameterSet) else ParameterSet(T)
    if m == 0:
        return 1
    total = 1
    for k in range(1, d + 1):
        for simplex in fan_simplices(T, k):
            total += omega_signed_count(T.subset(simplex), k, m)
    return total
