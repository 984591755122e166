import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nilnielsen.errors import DimensionError
from nilnielsen.group import (
    GroupPresentation, Polynomial, Term, abelian, builtin, check_group_axioms, heisenberg,
    random_rational_element,
    is_lattice_element,
)
from nilnielsen.linalg import matmul

coord = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def as_matrix(x):
    a, b, c = x.flat
    return ((1, a, c), (0, 1, b), (0, 0, 1))


def from_matrix(m):
    return heisenberg().element(m[0][1], m[1][2], m[0][2])


def test_heisenberg_multiply_example(heis):
    assert heis.multiply(heis.element(1, 0, 0), heis.element(0, 1, 0)) == heis.element(1, 1, 1)


@settings(max_examples=200, deadline=None)
@given(st.tuples(coord, coord, coord), st.tuples(coord, coord, coord))
def test_heisenberg_matches_matrix_oracle(p, q):
    h = heisenberg()
    x, y = h.element(*p), h.element(*q)
    assert h.multiply(x, y) == from_matrix(matmul(as_matrix(x), as_matrix(y)))


def test_heisenberg_inverse(heis):
    x = heis.element(1, 1, 1)
    assert heis.inverse(x) == heis.element(-1, -1, 0)
    assert heis.multiply(x, heis.inverse(x)) == heis.identity()


@settings(max_examples=100, deadline=None)
@given(st.tuples(coord, coord, coord), st.integers(-6, 6))
def test_power_is_repeated_multiply(p, m):
    h = heisenberg()
    x = h.element(*p)
    base = x if m >= 0 else h.inverse(x)
    expected = h.identity()
    for _ in range(abs(m)):
        expected = h.multiply(expected, base)
    assert h.power(x, m) == expected


def test_power_examples(heis):
    x = heis.element(1, 1, 0)
    assert heis.power(x, 2) == heis.element(2, 2, 1)
    assert heis.power(x, 0) == heis.identity()
    assert heis.power(x, 1) == x


def test_identity_rules(heis):
    x = heis.element(F(1, 3), -2, 5)
    assert heis.multiply(x, heis.identity()) == x
    assert heis.inverse(heis.identity()) == heis.identity()
    z2 = abelian(2)
    assert z2.inverse(z2.element(3, -1)) == z2.element(-3, 1)


def test_commutator(heis):
    a, b = heis.basis_element(0, 0), heis.basis_element(0, 1)
    assert heis.commutator(a, b) == heis.element(0, 0, 1)
    assert heis.commutator(a, a) == heis.identity()
    z3 = abelian(3)
    assert z3.commutator(z3.element(1, 2, 3), z3.element(4, 5, 6)) == z3.identity()


def test_lattice_membership():
    assert is_lattice_element(abelian(2).element(1, -3))
    assert not is_lattice_element(abelian(2).element(F(1, 2), 0))
    assert not is_lattice_element(heisenberg().element(0, 0, F(1, 4)))


def test_builtins():
    assert abelian(2).ranks == (2,)
    assert heisenberg().ranks == (2, 1)
    assert heisenberg().nilpotency_class == 2
    assert builtin("abelian(1)") == abelian(1)
    assert builtin("abelian", 3) == abelian(3)
    with pytest.raises(ValueError):
        builtin("klein")


def test_word_exponents(heis):
    # (1,1,1) = a b in the matrix law; (1,1,0) = a b c^-1
    assert heis.word_exponents(heis.element(1, 1, 1)) == ((1, 1), (0,))
    assert heis.word_exponents(heis.element(1, 1, 0)) == ((1, 1), (-1,))
    with pytest.raises(ValueError):
        heis.word_exponents(heis.element(F(1, 2), 0, 0))


@settings(max_examples=100, deadline=None)
@given(st.tuples(*(st.integers(-5, 5),) * 3))
def test_word_exponents_rebuild(p):
    h = heisenberg()
    x = h.element(*p)
    e = h.word_exponents(x)
    rebuilt = h.product(*(h.power(h.basis_element(i, j), e[i][j]) for i, j in h.basis()))
    assert rebuilt == x


@pytest.mark.parametrize("g", [heisenberg(), abelian(1), abelian(3)], ids=lambda g: g.name)
def test_axioms_builtins(g):
    report = check_group_axioms(g, sample_count=500)
    assert report.passed, report.failure


def test_symmetric_law_still_a_group():
    # p_2 = x_{1,1} y_{1,1} is associative too; the check must not flag it
    p = Polynomial((Term(F(1), x=((0, 0, 1),), y=((0, 0, 1),)),))
    g = GroupPresentation.create((2, 1), {(1, 0): p})
    assert check_group_axioms(g, 200).passed


def test_non_associative_law_caught():
    # p_2 = x_{1,1}^2 y_{1,2} is not associative
    p = Polynomial((Term(F(1), x=((0, 0, 2),), y=((0, 1, 1),)),))
    g = GroupPresentation.create((2, 1), {(1, 0): p})
    report = check_group_axioms(g, 200)
    assert not report.passed
    assert report.failure == "associativity"


def test_half_integer_law_breaks_lattice_closure():
    p = Polynomial((Term(F(1, 2), x=((0, 0, 1),), y=((0, 1, 1),)),))
    g = GroupPresentation.create((2, 1), {(1, 0): p})
    report = check_group_axioms(g, 200)
    assert not report.passed and "closure" in report.failure


def test_law_must_reference_lower_layers():
    p = Polynomial((Term(F(1), x=((1, 0, 1),), y=()),))
    with pytest.raises(DimensionError):
        GroupPresentation.create((2, 1), {(1, 0): p})


def test_axioms_deterministic():
    g = heisenberg()
    assert check_group_axioms(g, 50, seed=7).to_json() == check_group_axioms(g, 50, seed=7).to_json()


def test_heisenberg_matrix_model_1000_pairs():
    h = heisenberg()
    rng = random.Random(0)
    for _ in range(1000):
        x, y = random_rational_element(h, rng), random_rational_element(h, rng)
        assert h.multiply(x, y) == from_matrix(matmul(as_matrix(x), as_matrix(y)))


@settings(max_examples=100, deadline=None)
@given(st.tuples(coord, coord, coord), st.integers(-6, 6), st.integers(-6, 6))
def test_power_additive(p, m, n):
    h = heisenberg()
    x = h.element(*p)
    assert h.power(x, m + n) == h.multiply(h.power(x, m), h.power(x, n))
