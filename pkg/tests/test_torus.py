from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import torus_map
from nilnielsen.linalg import cofactor_det, i_minus, identity, matvec
from nilnielsen.nvalued import AffineLift, AffineNValuedMap, nielsen
from nilnielsen.torus import (
    InfiniteFixedSet, brute_force_reidemeister_z_k, count_matches_nielsen, enumerate_fixed_points,
)

H, Q = F(1, 2), F(1, 4)


def points(m, **kw):
    return {p.coordinates for p in enumerate_fixed_points(m, **kw)}


def assert_congruence(m, pts):
    for p in pts:
        lift = m.lifts[p.lift_index]
        mat = lift.endomorphism.layer_matrices()[0]
        lhs = matvec(i_minus(mat), p.coordinates)
        assert lhs == tuple(g + z for g, z in zip(lift.translation.flat, p.translation_class))
        assert all(0 <= v < 1 for v in p.coordinates)


def test_torus_f_points(torus_f):
    pts = enumerate_fixed_points(torus_f)
    assert {p.coordinates for p in pts} == {(0, 0), (0, H), (0, Q), (0, 3 * Q), (H, Q), (H, 3 * Q)}
    assert_congruence(torus_f, pts)


def test_torus_g_points(torus_g):
    assert points(torus_g, skip_singular=True) == {(0, 0), (0, H)}
    with pytest.raises(InfiniteFixedSet) as info:
        enumerate_fixed_points(torus_g)
    assert info.value.lift == 2


def test_circle_doubling():
    assert points(torus_map([((0,), [[2]])])) == {(0,)}


def test_count_matches(torus_f):
    ok, detail = count_matches_nielsen(torus_f)
    assert ok and detail == {"fixed_points": 6, "nielsen": 6}


def test_counts_add_for_shifted_pair():
    m = [[2, 1], [0, 3]]
    g = (F(1, 5), 0)
    one = torus_map([(g, m)])
    two = torus_map([(g, m), ((g[0] + H, g[1]), m)])
    assert len(enumerate_fixed_points(two)) == 2 * len(enumerate_fixed_points(one)) == nielsen(two)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
       st.tuples(st.fractions(0, 1, max_denominator=7), st.fractions(0, 1, max_denominator=7)))
def test_random_single_valued(entries, g):
    mat = [entries[:2], entries[2:]]
    assume(cofactor_det(i_minus(mat)) != 0)
    m = torus_map([(g, mat)])
    ok, detail = count_matches_nielsen(m)
    assert ok, detail
    assert_congruence(m, enumerate_fixed_points(m))


def test_abelian_only(heis, heis_phi):
    with pytest.raises(ValueError):
        enumerate_fixed_points(AffineNValuedMap(heis, (AffineLift(heis.identity(), heis_phi),)))


def test_brute_force_examples():
    assert brute_force_reidemeister_z_k([[6]], [[H]]) == 3
    assert brute_force_reidemeister_z_k(identity(2), [[-1, 0], [0, -1]]) == 4
    assert brute_force_reidemeister_z_k(identity(2), [[0, 0], [0, 0]]) == 1
    with pytest.raises(ValueError):
        brute_force_reidemeister_z_k([[6]], [[1]])
    with pytest.raises(ValueError):
        brute_force_reidemeister_z_k(identity(4), [[0] * 4] * 4)


def test_brute_force_non_diagonal():
    # (I - M) = [[2, 1], [0, 3]] has index 6 but cyclic quotient
    assert brute_force_reidemeister_z_k(identity(2), [[-1, -1], [0, -2]]) == 6
