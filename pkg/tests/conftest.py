from fractions import Fraction as F

import pytest

from nilnielsen import serialize
from nilnielsen.endomorphism import Endomorphism
from nilnielsen.group import abelian, heisenberg
from nilnielsen.nvalued import AffineLift, AffineNValuedMap


def torus_map(lifts):
    """Build a map on abelian(k) from [(translation, matrix), ...]."""
    g = abelian(len(lifts[0][0]))
    return AffineNValuedMap(g, tuple(AffineLift(g.element(*t), Endomorphism.linear(g, m))
                                     for t, m in lifts))


@pytest.fixture
def torus_f():
    return serialize.map_from_json(serialize.bundled_example("torus_f"))


@pytest.fixture
def torus_g():
    return serialize.map_from_json(serialize.bundled_example("torus_g"))


@pytest.fixture
def heis():
    return heisenberg()


@pytest.fixture
def heis_phi(heis):
    # a -> a^2, b -> b^3, c -> c^6
    return Endomorphism.from_images(heis, {
        (0, 0): heis.element(2, 0, 0),
        (0, 1): heis.element(0, 3, 0),
        (1, 0): heis.element(0, 0, 6),
    })


HALF = F(1, 2)
F_LIFTS = [((0, 0), [[HALF, 0], [0, -1]]),
           ((HALF, 0), [[HALF, 0], [0, -1]]),
           ((0, HALF), [[-1, 0], [0, -1]])]
G_LIFTS = F_LIFTS[:2] + [((0, HALF), [[1, 0], [0, -1]])]
