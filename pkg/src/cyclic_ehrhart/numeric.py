"""Exact integer/rational helpers and a small univariate polynomial type.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are arbitrary precision and normalized on construction.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

__all__ = [
    "ExactPolynomial",
    "elem_sym",
    "elem_sym_all",
    "factorial",
    "int_det",
    "permutation_sign",
    "poly_eval",
    "poly_interpolate",
    "signed_permutations",
    "vandermonde",
]


def elem_sym_all(rs: Sequence[int]) -> list[int]:
    """Return ``[e_0, e_1, ..., e_n]`` of ``rs`` via the usual one-pass recurrence."""
    e = [1] + [0] * len(rs)
    for i, r in enumerate(rs):
        for k in range(i + 1, 0, -1):
            e[k] += r * e[k - 1]
    return e


def elem_sym(k: int, rs: Sequence[int]) -> int:
    """k-th elementary symmetric function of ``rs``; ``e_0 = 1``."""
    if k < 0 or k > len(rs):
        raise DomainError(f"elem_sym: need 0 <= k <= {len(rs)}, got k={k}")
    return elem_sym_all(rs)[k]


def vandermonde(ts: Sequence[int]) -> int:
    """Product of ``t_j - t_i`` over ``i < j``; positive for increasing input."""
    out = 1
    for j in range(len(ts)):
        for i in range(j):
            out *= ts[j] - ts[i]
    return out


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``0..n-1`` given in one-line notation."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def signed_permutations(n: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(perm, sign)`` for all permutations of ``0..n-1`` in lexicographic order."""
    for perm in permutations(range(n)):
        yield perm, permutation_sign(perm)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise DomainError("int_det: matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class ExactPolynomial:
    """Univariate polynomial with :class:`Fraction` coefficients, lowest power first.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients
    and ``degree`` is ``-1``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[int | Fraction] = ()):
        cs = [Fraction(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other: ExactPolynomial) -> ExactPolynomial:
        n = max(len(self._coeffs), len(other._coeffs))
        return ExactPolynomial(self.coefficient(k) + other.coefficient(k) for k in range(n))

    def __sub__(self, other: ExactPolynomial) -> ExactPolynomial:
        n = max(len(self._coeffs), len(other._coeffs))
        return ExactPolynomial(self.coefficient(k) - other.coefficient(k) for k in range(n))

    def __mul__(self, other):
        if not isinstance(other, ExactPolynomial):
            return ExactPolynomial(c * other for c in self._coeffs)
        if not self._coeffs or not other._coeffs:
            return ExactPolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"ExactPolynomial({[str(c) for c in self._coeffs]})"

    def format(self, var: str = "m") -> str:
        """Descending powers with explicit ``*`` and ``^``, e.g. ``2*m^3 + 4*m^2 + 3*m + 1``."""
        terms = []
        for k in range(self.degree, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()


def poly_eval(p: ExactPolynomial, x) -> Fraction:
    """Horner evaluation; exact for integer or rational ``x``."""
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


def poly_interpolate(points: Sequence[tuple[int | Fraction, int | Fraction]]) -> ExactPolynomial:
    """Lagrange interpolant of degree < len(points) with exact coefficients."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DomainError("poly_interpolate: duplicate abscissa")
    result = ExactPolynomial()
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        basis = ExactPolynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * ExactPolynomial([-xj, 1])
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result
