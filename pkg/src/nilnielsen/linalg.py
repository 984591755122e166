"""Exact rational and integer-lattice linear algebra.

Matrices are tuples of row tuples holding ``Fraction`` (rational) or ``int``
(integer) entries. Nothing here ever touches floating point.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Sequence, Tuple

from .errors import DimensionError

Matrix = Tuple[Tuple[Fraction, ...], ...]
IntMatrix = Tuple[Tuple[int, ...], ...]


# --------------------------------------------------------------------------
# rationals

def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value) -> str:
    """``"p/q"``, or ``"p"`` when q = 1; sign on the numerator only."""
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# --------------------------------------------------------------------------
# extended counts

@functools.total_ordering
class ExtendedCount:
    """A non-negative rational or infinity.

    Reidemeister and Nielsen counts are integers, but ``abs_inf`` of a
    determinant may be a proper fraction (a single lift-factor of a
    multi-valued map can contribute 1/2), so the finite value is kept as a
    Fraction and ``is_integral`` tells the two apart.
    """

    __slots__ = ("_value",)

    def __init__(self, value=None):
        if value is not None:
            value = to_fraction(value)
            if value < 0:
                raise ValueError(f"extended counts are non-negative, got {value}")
        object.__setattr__(self, "_value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtendedCount is immutable")

    @classmethod
    def infinite(cls) -> "ExtendedCount":
        return INFINITE

    @classmethod
    def parse(cls, text: str) -> "ExtendedCount":
        if text == "infinite":
            return INFINITE
        return cls(to_fraction(text))

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def is_integral(self) -> bool:
        return self._value is not None and self._value.denominator == 1

    @property
    def value(self):
        """The finite value (int when integral); raises for infinity."""
        if self._value is None:
            raise ValueError("infinite count has no finite value")
        if self._value.denominator == 1:
            return self._value.numerator
        return self._value

    def __int__(self):
        if not self.is_integral:
            raise ValueError(f"{self} is not an integer")
        return self._value.numerator

    def _coerce(self, other):
        if isinstance(other, ExtendedCount):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ExtendedCount(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return ExtendedCount(self._value + other._value)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_infinite or other.is_infinite:
            # 0 * infinity never arises from a correct formula
            if self._value == 0 or other._value == 0:
                raise ArithmeticError("0 * infinity is undefined for extended counts")
            return INFINITE
        return ExtendedCount(self._value * other._value)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._value == other._value

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self._value < other._value

    def __hash__(self):
        return hash(("ExtendedCount", self._value))

    def __str__(self):
        return "infinite" if self._value is None else format_rational(self._value)

    def __repr__(self):
        return f"ExtendedCount({str(self)!r})"


INFINITE = ExtendedCount.__new__(ExtendedCount)
object.__setattr__(INFINITE, "_value", None)


def abs_inf(r) -> ExtendedCount:
    """|r| when r != 0, infinity when r == 0."""
    r = to_fraction(r)
    if r == 0:
        return INFINITE
    return ExtendedCount(abs(r))


# --------------------------------------------------------------------------
# matrix construction and arithmetic

def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Rational matrix from nested sequences of exact scalars."""
    out = tuple(tuple(to_fraction(v) for v in row) for row in rows)
    _check_rectangular(out)
    return out


def as_int_matrix(rows: Sequence[Sequence]) -> IntMatrix:
    out = []
    for row in rows:
        new_row = []
        for v in row:
            f = to_fraction(v)
            if f.denominator != 1:
                raise ValueError(f"non-integral entry {f} in integer matrix")
            new_row.append(f.numerator)
        out.append(tuple(new_row))
    out = tuple(out)
    _check_rectangular(out)
    return out


def _check_rectangular(m):
    if not m or not m[0]:
        raise DimensionError("matrices must have at least one row and column")
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise DimensionError("ragged matrix rows")


def shape(m) -> Tuple[int, int]:
    return len(m), len(m[0])


def _require_square(m):
    rows, cols = shape(m)
    if rows != cols:
        raise DimensionError(f"expected a square matrix, got {rows}x{cols}")
    return rows


def identity(n: int, exact=Fraction):
    return tuple(tuple(exact(int(i == j)) for j in range(n)) for i in range(n))


def diagonal(values, exact=Fraction):
    values = [exact(v) if exact is int else to_fraction(v) for v in values]
    n = len(values)
    return tuple(tuple(values[i] if i == j else exact(0) for j in range(n)) for i in range(n))


def matmul(a, b):
    if shape(a)[1] != shape(b)[0]:
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0) for col in cols) for row in a)


def matvec(a, v):
    if shape(a)[1] != len(v):
        raise DimensionError(f"cannot apply {shape(a)} matrix to a vector of length {len(v)}")
    return tuple(sum((x * y for x, y in zip(row, v)), 0) for row in a)


def matsub(a, b):
    if shape(a) != shape(b):
        raise DimensionError(f"cannot subtract {shape(b)} from {shape(a)}")
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def i_minus(m) -> Matrix:
    """I - m for a square rational matrix."""
    n = _require_square(m)
    return matsub(identity(n), m)


def is_integral(m) -> bool:
    return all(Fraction(v).denominator == 1 for row in m for v in row)


def to_int_matrix(m) -> IntMatrix:
    if not is_integral(m):
        raise ValueError("matrix has non-integral entries")
    return tuple(tuple(int(Fraction(v)) for v in row) for row in m)


# --------------------------------------------------------------------------
# determinants

def det(m) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Denominators are cleared first so the elimination runs on integers;
    every Bareiss division is exact.
    """
    n = _require_square(m)
    scale = 1
    for row in m:
        for v in row:
            scale = lcm(scale, Fraction(v).denominator)
    a = [[int(Fraction(v) * scale) for v in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale ** n)


def cofactor_det(m) -> Fraction:
    """Determinant by Laplace expansion along the first row.

    Exponential time; kept as an independent check on ``det`` for small
    matrices.
    """
    n = _require_square(m)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        term = Fraction(m[0][j]) * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def inverse(m) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = _require_square(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


# --------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(a) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U·a·V = S.

    U and V are unimodular and S is diagonal with non-negative entries, each
    dividing the next (zeros trail). Pivots are chosen as the entry of
    minimal absolute value in the remaining block.
    """
    a = as_int_matrix(a)
    n = _require_square(a)
    s = [list(row) for row in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (s, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for mat in (s, v):
            for row in mat:
                row[dst] += q * row[src]

    for t in range(n):
        while True:
            nonzero = [(abs(s[i][j]), i, j) for i in range(t, n) for j in range(t, n) if s[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = s[t][t]
            for i in range(t + 1, n):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
            if any(s[i][t] for i in range(t + 1, n)) or any(s[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, n) for j in range(t + 1, n) if s[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row up so its remainder becomes a smaller pivot
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]

    freeze = lambda m: tuple(tuple(row) for row in m)  # noqa: E731
    return freeze(u), freeze(s), freeze(v)


def lattice_index(a) -> ExtendedCount:
    """[Z^k : A Z^k], infinite when A is singular.

    Computed as the product of the Smith diagonal and cross-checked against
    the Bareiss determinant.
    """
    _, s, _ = smith_normal_form(a)
    product = 1
    for i in range(len(s)):
        product *= s[i][i]
    expected = abs(det(a))
    if product != expected:
        raise AssertionError(f"SNF diagonal product {product} disagrees with |det| = {expected}")
    return INFINITE if product == 0 else ExtendedCount(product)
