from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from nilnielsen.endomorphism import Endomorphism
from nilnielsen.group import abelian
from nilnielsen.linalg import cofactor_det, identity, inverse, matmul
from nilnielsen.torus import brute_force_reidemeister_z_k
from nilnielsen.twisted import (
    LayerDatum, TwistedSetup, is_infinite, oracle_abelian_classes, oracle_nilpotent_classes,
    reidemeister_abelian, reidemeister_full, reidemeister_product, setup_from_layers,
)

entry = st.integers(-2, 2)


@st.composite
def admissible(draw, k):
    b = draw(st.lists(st.lists(entry, min_size=k, max_size=k), min_size=k, max_size=k))
    assume(cofactor_det(b) != 0)
    c = draw(st.lists(st.lists(entry, min_size=k, max_size=k), min_size=k, max_size=k))
    # M B = C is integral by construction
    m = matmul(c, inverse(b))
    return b, m


def test_example_family():
    assert reidemeister_abelian(LayerDatum([[6]], [[F(1, 2)]])) == 3
    assert reidemeister_abelian(LayerDatum([[6]], [[1]])).is_infinite
    assert reidemeister_abelian(LayerDatum(identity(2), [[0, 0], [0, 0]])) == 1


def test_layer_invariants():
    with pytest.raises(ValueError):
        LayerDatum([[2]], [[F(1, 3)]])
    with pytest.raises(ValueError):
        LayerDatum([[0]], [[1]])


def test_heisenberg_product():
    s = setup_from_layers([(identity(2), [[2, 0], [0, 3]]), ([[1]], [[6]])])
    assert reidemeister_product(s) == 10
    assert reidemeister_full(1, s) == 10
    assert not is_infinite(s)


def test_product_absorbs_infinite():
    s = setup_from_layers([(identity(2), [[2, 0], [0, 3]]), ([[1]], [[1]])])
    assert reidemeister_product(s).is_infinite and is_infinite(s)
    assert reidemeister_full(1, s).is_infinite


def test_full_formula_example():
    s = setup_from_layers([([[6]], [[F(1, 2)]])])
    assert reidemeister_full(6, s) == 3 == reidemeister_abelian(s.layers[0])
    with pytest.raises(ValueError):
        reidemeister_full(5, s)


def test_identity_is_infinite():
    s = setup_from_layers([(identity(2), identity(2))])
    assert reidemeister_full(1, s).is_infinite and is_infinite(s)


def test_c1_reduces_to_abelian():
    d = LayerDatum([[2, 0], [0, 3]], [[F(1, 2), 0], [1, F(2, 3)]])
    assert reidemeister_product(TwistedSetup((d,))) == reidemeister_abelian(d)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 2).flatmap(admissible))
def test_formula_matches_oracles(bm):
    b, m = bm
    d = LayerDatum(b, m)
    r = reidemeister_abelian(d)
    assume(r.is_finite)
    assert oracle_abelian_classes(d) == r
    assert brute_force_reidemeister_z_k(b, m) == r


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 2).flatmap(admissible), st.integers(1, 2).flatmap(admissible))
def test_full_equals_product(l1, l2):
    s = setup_from_layers([l1, l2])
    index = abs(cofactor_det(l1[0]) * cofactor_det(l2[0]))
    assert reidemeister_full(index, s) == reidemeister_product(s)
    assert reidemeister_product(s).is_infinite == is_infinite(s)


def test_abelian_oracle_examples():
    assert oracle_abelian_classes(LayerDatum([[6]], [[F(1, 2)]])) == 3
    assert oracle_abelian_classes(LayerDatum(identity(2), [[0, 0], [0, 0]])) == 1
    with pytest.raises(ValueError):
        oracle_abelian_classes(LayerDatum([[6]], [[1]]))


def test_nilpotent_oracle_abelian_cases():
    times3 = Endomorphism.linear(abelian(1), [[3]])
    assert set(oracle_nilpotent_classes(times3, 5).values()) == {2}
    double = Endomorphism.linear(abelian(2), [[2, 0], [0, 2]])
    assert set(oracle_nilpotent_classes(double, 4).values()) == {1}


def test_nilpotent_oracle_heisenberg(heis_phi):
    census = oracle_nilpotent_classes(heis_phi, 6)
    assert census[4] == census[5] == census[6] == 10
    counts = [census[b] for b in sorted(census) if b >= 4]
    assert all(x >= y for x, y in zip(counts, counts[1:]))


def test_nilpotent_oracle_guards(heis, heis_phi):
    with pytest.raises(ValueError):
        oracle_nilpotent_classes(Endomorphism.identity(heis), 4)
    with pytest.raises(ValueError):
        oracle_nilpotent_classes(heis_phi, 7)
