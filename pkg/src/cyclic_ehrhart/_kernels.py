"""Fiber-scan kernels for lattice enumeration in a nested half-space system.

A *level system* describes a chain of polytopes ``Q_1, ..., Q_d`` with
``Q_k`` in ``R^k`` and ``pi(Q_k) = Q_{k-1}``; level ``k`` holds the inward
half-spaces ``a . x >= b`` of ``Q_k``.  Scanning lattice prefixes of
``Q_{d-1}`` and intersecting each vertical line with the level-``d``
half-spaces gives, per fiber, the exact rational end points as floor/ceil
pairs.

Three interchangeable backends compute the same integers:

* ``numba``  - ``@njit`` depth-first scan over int64 (default when importable)
* ``numpy``  - chunked level-by-level expansion over int64 arrays
* ``python`` - the same scan on Python ints; used automatically whenever the
  int64 magnitude bound could be exceeded

Select with the ``CYCLIC_EHRHART_BACKEND`` environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

BACKEND_ENV = "CYCLIC_EHRHART_BACKEND"
BACKENDS = ("numba", "numpy", "python")
INT64_SAFE = 2**62
CHUNK_ROWS = 1 << 15


def default_backend() -> str:
    name = os.environ.get(BACKEND_ENV, "").strip().lower()
    if name:
        if name not in BACKENDS:
            raise ValueError(f"{BACKEND_ENV}={name!r}; expected one of {BACKENDS}")
        if name == "numba" and not HAVE_NUMBA:
            return "numpy"
        return name
    return "numba" if HAVE_NUMBA else "numpy"


@dataclass(frozen=True)
class LevelSystem:
    """Half-spaces per level plus an integer bounding box per coordinate."""

    normals: tuple[tuple[tuple[int, ...], ...], ...]  # normals[k][f] has length k+1
    offsets: tuple[tuple[int, ...], ...]
    box: tuple[tuple[int, int], ...]

    @property
    def d(self) -> int:
        return len(self.box)

    def magnitude_bound(self) -> int:
        """Upper bound on |b - a . x| over the box, for every level."""
        reach = [max(abs(lo), abs(hi)) for lo, hi in self.box]
        worst = 0
        for normals, offsets in zip(self.normals, self.offsets):
            for a, b in zip(normals, offsets):
                worst = max(worst, abs(b) + sum(abs(ai) * r for ai, r in zip(a, reach)))
        return worst

    def fits_int64(self) -> bool:
        return self.magnitude_bound() < INT64_SAFE

    def packed(self):
        """Level rows stacked into one zero-padded int64 matrix with row offsets."""
        d = self.d
        rows = sum(len(n) for n in self.normals)
        A = np.zeros((rows, d), dtype=np.int64)
        b = np.zeros(rows, dtype=np.int64)
        start = np.zeros(d + 1, dtype=np.int64)
        r = 0
        for k, (normals, offsets) in enumerate(zip(self.normals, self.offsets)):
            start[k] = r
            for a, off in zip(normals, offsets):
                A[r, : len(a)] = a
                b[r] = off
                r += 1
        start[d] = r
        box = np.array(self.box, dtype=np.int64).reshape(d, 2)
        return A, b, start, box


@dataclass(frozen=True)
class ScanResult:
    closed: int  # lattice points of Q_d
    omega: int  # lattice points strictly above the lower fiber end
    nonintegral: int  # fibers whose end points are not integers
    fibers: int  # lattice points of Q_{d-1} (1 when d == 1)


# ---------------------------------------------------------------- python ints


def _bounds_py(normals, offsets, x, k, lo0, hi0):
    lo_c = lo_f = lo0
    hi_c = hi_f = hi0
    for a, b in zip(normals, offsets):
        rem = b
        for j in range(k):
            rem -= a[j] * x[j]
        ak = a[k]
        if ak > 0:
            lo_c = max(lo_c, -((-rem) // ak))
            lo_f = max(lo_f, rem // ak)
        elif ak < 0:
            hi_f = min(hi_f, rem // ak)
            hi_c = min(hi_c, -((-rem) // ak))
        elif rem > 0:
            return 1, 1, 0, 0
    return lo_c, lo_f, hi_f, hi_c


def scan_python(system: LevelSystem) -> ScanResult:
    d = system.d
    closed = omega = nonint = fibers = 0
    x = [0] * d

    def last_level():
        nonlocal closed, omega, nonint, fibers
        lo_c, lo_f, hi_f, hi_c = _bounds_py(
            system.normals[d - 1], system.offsets[d - 1], x, d - 1, *system.box[d - 1]
        )
        fibers += 1
        closed += max(0, hi_f - lo_c + 1)
        omega += max(0, hi_f - lo_f)
        if lo_c != lo_f or hi_c != hi_f:
            nonint += 1

    def rec(k):
        if k == d - 1:
            last_level()
            return
        lo_c, _, hi_f, _ = _bounds_py(system.normals[k], system.offsets[k], x, k, *system.box[k])
        for v in range(lo_c, hi_f + 1):
            x[k] = v
            rec(k + 1)

    rec(0)
    return ScanResult(closed, omega, nonint, fibers)


# --------------------------------------------------------------------- numba

if HAVE_NUMBA:

    @njit(cache=True)
    def _bounds_nb(A, b, s, e, x, k, lo0, hi0, out):
        lo_c = lo0
        lo_f = lo0
        hi_c = hi0
        hi_f = hi0
        for r in range(s, e):
            rem = b[r]
            for j in range(k):
                rem -= A[r, j] * x[j]
            ak = A[r, k]
            if ak > 0:
                c = -((-rem) // ak)
                f = rem // ak
                if c > lo_c:
                    lo_c = c
                if f > lo_f:
                    lo_f = f
            elif ak < 0:
                c = -((-rem) // ak)
                f = rem // ak
                if f < hi_f:
                    hi_f = f
                if c < hi_c:
                    hi_c = c
            elif rem > 0:
                lo_c = 1
                lo_f = 1
                hi_f = 0
                hi_c = 0
                break
        out[0] = lo_c
        out[1] = lo_f
        out[2] = hi_f
        out[3] = hi_c

    @njit(cache=True)
    def _scan_nb(A, b, start, box):
        d = box.shape[0]
        x = np.zeros(d, dtype=np.int64)
        hi = np.zeros(d, dtype=np.int64)
        bnd = np.zeros(4, dtype=np.int64)
        closed = 0
        omega = 0
        nonint = 0
        fibers = 0
        last = d - 1
        if d == 1:
            _bounds_nb(A, b, start[0], start[1], x, 0, box[0, 0], box[0, 1], bnd)
            fibers = 1
            if bnd[2] - bnd[0] + 1 > 0:
                closed = bnd[2] - bnd[0] + 1
            if bnd[2] - bnd[1] > 0:
                omega = bnd[2] - bnd[1]
            if bnd[0] != bnd[1] or bnd[2] != bnd[3]:
                nonint = 1
            return closed, omega, nonint, fibers
        k = 0
        _bounds_nb(A, b, start[0], start[1], x, 0, box[0, 0], box[0, 1], bnd)
        x[0] = bnd[0]
        hi[0] = bnd[2]
        while True:
            if x[k] > hi[k]:
                if k == 0:
                    break
                k -= 1
                x[k] += 1
                continue
            if k == last - 1:
                _bounds_nb(A, b, start[last], start[last + 1], x, last, box[last, 0], box[last, 1], bnd)
                fibers += 1
                if bnd[2] - bnd[0] + 1 > 0:
                    closed += bnd[2] - bnd[0] + 1
                if bnd[2] - bnd[1] > 0:
                    omega += bnd[2] - bnd[1]
                if bnd[0] != bnd[1] or bnd[2] != bnd[3]:
                    nonint += 1
                x[k] += 1
                continue
            k += 1
            _bounds_nb(A, b, start[k], start[k + 1], x, k, box[k, 0], box[k, 1], bnd)
            x[k] = bnd[0]
            hi[k] = bnd[2]
        return closed, omega, nonint, fibers


def scan_numba(system: LevelSystem) -> ScanResult:
    A, b, start, box = system.packed()
    closed, omega, nonint, fibers = _scan_nb(A, b, start, box)
    return ScanResult(int(closed), int(omega), int(nonint), int(fibers))


# --------------------------------------------------------------------- numpy


def _bounds_np(A, b, prefixes, k, lo0, hi0):
    n = prefixes.shape[0]
    rem = b[None, :] - prefixes @ A[:, :k].T if k else np.broadcast_to(b, (n, b.shape[0]))
    a = A[:, k]
    lo_c = np.full(n, lo0, dtype=np.int64)
    lo_f = lo_c.copy()
    hi_f = np.full(n, hi0, dtype=np.int64)
    hi_c = hi_f.copy()
    pos, neg, zero = a > 0, a < 0, a == 0
    if pos.any():
        r, ap = rem[:, pos], a[pos]
        lo_c = np.maximum(lo_c, (-((-r) // ap)).max(axis=1))
        lo_f = np.maximum(lo_f, (r // ap).max(axis=1))
    if neg.any():
        r, an = rem[:, neg], a[neg]
        hi_f = np.minimum(hi_f, (r // an).min(axis=1))
        hi_c = np.minimum(hi_c, (-((-r) // an)).min(axis=1))
    if zero.any():
        dead = (rem[:, zero] > 0).any(axis=1)
        lo_c[dead] = lo_f[dead] = 1
        hi_f[dead] = hi_c[dead] = 0
    return lo_c, lo_f, hi_f, hi_c


def _level_arrays(system: LevelSystem):
    out = []
    for normals, offsets in zip(system.normals, system.offsets):
        k1 = len(normals[0]) if normals else 0
        A = np.array(normals, dtype=np.int64).reshape(len(normals), k1)
        out.append((A, np.array(offsets, dtype=np.int64)))
    return out


def _expand(prefixes, lo, count):
    total = int(count.sum())
    rep = np.repeat(prefixes, count, axis=0)
    group_start = np.repeat(np.cumsum(count) - count, count)
    col = np.repeat(lo, count) + (np.arange(total, dtype=np.int64) - group_start)
    return np.column_stack([rep, col]) if prefixes.shape[1] else col.reshape(-1, 1)


def _walk_numpy(system: LevelSystem, levels, prefixes, k, visit):
    """Depth-first over chunks of lattice prefixes; ``visit`` handles the last level."""
    d = system.d
    if k == d - 1:
        visit(prefixes, _bounds_np(*levels[k], prefixes, k, *system.box[k]))
        return
    lo_c, _, hi_f, _ = _bounds_np(*levels[k], prefixes, k, *system.box[k])
    count = np.maximum(hi_f - lo_c + 1, 0)
    nxt = _expand(prefixes, lo_c, count)
    for s in range(0, nxt.shape[0], CHUNK_ROWS):
        _walk_numpy(system, levels, nxt[s : s + CHUNK_ROWS], k + 1, visit)


def scan_numpy(system: LevelSystem) -> ScanResult:
    acc = [0, 0, 0, 0]

    def visit(_prefixes, bounds):
        lo_c, lo_f, hi_f, hi_c = bounds
        acc[0] += int(np.maximum(hi_f - lo_c + 1, 0).sum())
        acc[1] += int(np.maximum(hi_f - lo_f, 0).sum())
        acc[2] += int(((lo_c != lo_f) | (hi_c != hi_f)).sum())
        acc[3] += lo_c.shape[0]

    _walk_numpy(system, _level_arrays(system), np.zeros((1, 0), dtype=np.int64), 0, visit)
    return ScanResult(*acc)


def lattice_points_numpy(system: LevelSystem, half_open: bool = False) -> np.ndarray:
    """All lattice points of ``Q_d`` in lexicographic order, as an ``(N, d)`` int64 array.

    With ``half_open`` the lowest point of every fiber is dropped when it is
    a lattice point, i.e. only ``lo < x_d <= hi`` is kept.
    """
    chunks = []

    def visit(prefixes, bounds):
        lo_c, lo_f, hi_f, _ = bounds
        lo = lo_f + 1 if half_open else lo_c
        count = np.maximum(hi_f - lo + 1, 0)
        chunks.append(_expand(prefixes, lo, count))

    _walk_numpy(system, _level_arrays(system), np.zeros((1, 0), dtype=np.int64), 0, visit)
    if not chunks:
        return np.zeros((0, system.d), dtype=np.int64)
    return np.concatenate(chunks, axis=0)


def lattice_points_python(system: LevelSystem, half_open: bool = False) -> list[tuple[int, ...]]:
    d = system.d
    out: list[tuple[int, ...]] = []
    x = [0] * d

    def rec(k):
        lo_c, lo_f, hi_f, _ = _bounds_py(system.normals[k], system.offsets[k], x, k, *system.box[k])
        lo = lo_f + 1 if (half_open and k == d - 1) else lo_c
        for v in range(lo, hi_f + 1):
            x[k] = v
            if k == d - 1:
                out.append(tuple(x))
            else:
                rec(k + 1)

    rec(0)
    return out


_SCANNERS = {"numba": scan_numba, "numpy": scan_numpy, "python": scan_python}


def scan(system: LevelSystem, backend: str | None = None) -> ScanResult:
    """Fiber scan with the requested backend, demoted to ``python`` on int64 risk."""
    name = backend or default_backend()
    if name not in _SCANNERS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        name = "numpy"
    if name != "python" and not system.fits_int64():
        name = "python"
    return _SCANNERS[name](system)


def lattice_points(system: LevelSystem, half_open: bool = False) -> list[tuple[int, ...]]:
    if system.fits_int64():
        return [tuple(map(int, row)) for row in lattice_points_numpy(system, half_open).tolist()]
    return lattice_points_python(system, half_open)


def system_from_halfspaces(
    normals: Sequence[Sequence[Sequence[int]]],
    offsets: Sequence[Sequence[int]],
    box: Sequence[tuple[int, int]],
) -> LevelSystem:
    return LevelSystem(
        tuple(tuple(tuple(int(v) for v in a) for a in lvl) for lvl in normals),
        tuple(tuple(int(v) for v in lvl) for lvl in offsets),
        tuple((int(lo), int(hi)) for lo, hi in box),
    )
