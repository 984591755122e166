from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nilnielsen.errors import DimensionError
from nilnielsen.linalg import (
    INFINITE, ExtendedCount, abs_inf, cofactor_det, det, diagonal, format_rational, i_minus,
    identity, inverse, lattice_index, matmul, smith_normal_form, to_fraction,
)

small = st.integers(-5, 5)


def square(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def test_det_torus_first_term():
    assert det(i_minus(diagonal([F(1, 2), -1]))) == 1


def test_det_identity():
    for n in range(1, 5):
        assert det(identity(n)) == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_cofactor_oracle(m):
    assert det(m) == cofactor_det(m)


@settings(max_examples=50, deadline=None)
@given(square(3), st.integers(1, 7))
def test_det_rational_scaling(m, q):
    scaled = [[F(v, q) for v in row] for row in m]
    assert det(scaled) == cofactor_det(m) / F(q) ** len(m)


def test_det_non_square():
    with pytest.raises(DimensionError):
        det([[1, 2]])


def test_inverse_roundtrip():
    m = [[2, 1], [F(1, 3), 4]]
    assert matmul(m, inverse(m)) == identity(2)


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]])[1] == ((1, 0), (0, 6))
    assert smith_normal_form([[1, 0], [0, 1]])[1] == ((1, 0), (0, 1))
    assert smith_normal_form([[2, 0], [0, 0]])[1] == ((2, 0), (0, 0))


@settings(max_examples=100, deadline=None)
@given(square(4))
def test_snf_sound(a):
    u, s, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == s
    assert abs(cofactor_det(u)) == 1 and abs(cofactor_det(v)) == 1
    n = len(a)
    diag = [s[i][i] for i in range(n)]
    assert all(s[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    assert all(d >= 0 for d in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)


@settings(max_examples=100, deadline=None)
@given(square(4))
def test_lattice_index_is_abs_inf_det(a):
    assert lattice_index(a) == abs_inf(cofactor_det(a))


def test_lattice_index_examples():
    assert lattice_index([[2, 0], [0, 3]]) == 6
    assert lattice_index([[1, 0], [0, 1]]) == 1
    assert lattice_index([[1, 2], [2, 4]]) is INFINITE


def test_abs_inf():
    assert abs_inf(0).is_infinite
    assert abs_inf(-5) == 5
    assert abs_inf(F(1, 2)) == F(1, 2)


@settings(max_examples=200)
@given(st.fractions(), st.fractions())
def test_rational_exact(a, b):
    assert (a + b) - b == a


def test_extended_count_arithmetic():
    three = ExtendedCount(3)
    assert (three + INFINITE).is_infinite
    assert (three * INFINITE).is_infinite
    assert three * 2 == 6
    assert INFINITE > three
    with pytest.raises(ArithmeticError):
        ExtendedCount(0) * INFINITE
    assert str(INFINITE) == "infinite" and str(three) == "3"
    assert ExtendedCount.parse("infinite").is_infinite
    assert ExtendedCount.parse("5/2").value == F(5, 2)


def test_extended_count_rejects_negative():
    with pytest.raises(ValueError):
        ExtendedCount(-1)


def test_rational_io():
    assert format_rational(F(-3, 4)) == "-3/4"
    assert format_rational(F(4, 2)) == "2"
    assert to_fraction("-3/4") == F(-3, 4)
    with pytest.raises(TypeError):
        to_fraction(0.5)
