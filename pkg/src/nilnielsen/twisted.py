"""Reidemeister numbers of morphisms phi: H -> N on nilpotent lattices.

H is described layer by layer: on N_i/N_{i+1} = Z^{k_i} the image of H is
B_i Z^{k_i}, and the induced morphism B_i Z^{k_i} -> Z^{k_i} is z -> M_i z.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from scipy.cluster.hierarchy import DisjointSet

from .endomorphism import Endomorphism
from .linalg import (
    ExtendedCount, IntMatrix, Matrix, abs_inf, as_int_matrix, as_matrix, cofactor_det,
    det, i_minus, is_integral, lattice_index, matmul, shape, to_int_matrix,
)

ABELIAN_ORACLE_MAX_RANK = 3
ABELIAN_ORACLE_MAX_POINTS = 2_000_000
NILPOTENT_ORACLE_MAX_BOX = 6


@dataclass(frozen=True)
class LayerDatum:
    B: IntMatrix
    M: Matrix

    def __post_init__(self):
        b = as_int_matrix(self.B)
        m = as_matrix(self.M)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "M", m)
        if shape(b) != shape(m) or shape(b)[0] != shape(b)[1]:
            raise ValueError(f"B {shape(b)} and M {shape(m)} must be square of equal size")
        if det(b) == 0:
            raise ValueError("B must be nonsingular (H has finite index)")
        if not is_integral(matmul(m, b)):
            raise ValueError("M·B must be integral: phi maps B Z^k into Z^k")

    @property
    def rank(self) -> int:
        return len(self.B)

    def twisted_lattice(self) -> IntMatrix:
        """(I - M) B, an integer matrix whose columns span the class relation."""
        return to_int_matrix(matmul(i_minus(self.M), self.B))


@dataclass(frozen=True)
class TwistedSetup:
    layers: Tuple[LayerDatum, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise ValueError("a twisted setup needs at least one layer")

    @classmethod
    def from_endomorphism(cls, phi: Endomorphism) -> "TwistedSetup":
        """H = N (every B_i = I) with the layer matrices of phi."""
        layers = []
        for m in phi.layer_matrices():
            k = len(m)
            layers.append(LayerDatum(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), m))
        return cls(tuple(layers))

    def index(self) -> ExtendedCount:
        """[N:H] as the product of the per-layer indices [Z^k : B Z^k]."""
        total = ExtendedCount(1)
        for d in self.layers:
            total = total * lattice_index(d.B)
        return total


def reidemeister_abelian(d: LayerDatum) -> ExtendedCount:
    """R of z -> M z on B Z^k: the index of (I - M) B Z^k in Z^k."""
    r = lattice_index(d.twisted_lattice())
    # must agree with [Z^k : B Z^k] |det(I - M)|_inf
    expected = lattice_index(d.B) * abs_inf(det(i_minus(d.M)))
    assert r == expected, (r, expected)
    return r


def reidemeister_product(s: TwistedSetup) -> ExtendedCount:
    result = ExtendedCount(1)
    for d in s.layers:
        result = result * reidemeister_abelian(d)
    return result


def reidemeister_full(index_N_H: int, s: TwistedSetup) -> ExtendedCount:
    """[N:H] · |det(I - M)|_inf for the block-diagonal M of all layers."""
    if index_N_H < 1:
        raise ValueError("[N:H] must be a positive integer")
    expected = s.index()
    if expected != index_N_H:
        raise ValueError(f"[N:H] = {index_N_H} is inconsistent with the layer data (product {expected})")
    block_det = Fraction(1)
    for d in s.layers:
        block_det *= det(i_minus(d.M))
    return ExtendedCount(index_N_H) * abs_inf(block_det)


def is_infinite(s: TwistedSetup) -> bool:
    return any(det(i_minus(d.M)) == 0 for d in s.layers)


# --------------------------------------------------------------------------
# brute-force oracles

def oracle_abelian_classes(d: LayerDatum) -> int:
    """Count classes of Z^k under z ~ z + (I - M) B w by explicit merging.

    With q = |det((I - M) B)| the lattice contains q Z^k, so classes are
    orbits on the box {0..q-1}^k under translation by the columns of
    (I - M) B taken mod q. The determinant here is the cofactor expansion,
    not the elimination used by the formula path.
    """
    k = d.rank
    if k > ABELIAN_ORACLE_MAX_RANK:
        raise ValueError(f"oracle limited to rank <= {ABELIAN_ORACLE_MAX_RANK}")
    a = d.twisted_lattice()
    q = abs(cofactor_det(a))
    if q == 0:
        raise ValueError("(I - M) B is singular: infinitely many classes")
    q = int(q)
    if q ** k > ABELIAN_ORACLE_MAX_POINTS:
        raise ValueError(f"box of {q}^{k} points exceeds the oracle limit")
    points = list(itertools.product(range(q), repeat=k))
    classes = DisjointSet(points)
    columns = [tuple(a[r][c] for r in range(k)) for c in range(k)]
    for p in points:
        for col in columns:
            classes.merge(p, tuple((x + y) % q for x, y in zip(p, col)))
    return classes.n_subsets


def oracle_nilpotent_classes(phi: Endomorphism, box_bound: int,
                             min_bound: int = 3) -> Dict[int, int]:
    """Box census of twisted conjugacy classes alpha ~ gamma alpha phi(gamma)^-1.

    For each bound b in [min_bound, box_bound] the lattice points with
    coordinates in [-b, b] are merged along gamma in {basis elements and
    their inverses} whenever the image stays in the box; the result counts
    the merged classes meeting the core box [-(b-2), b-2]. This is evidence
    that stabilizes as b grows, not an exact count.
    """
    g = phi.group
    if g.nilpotency_class > 2:
        raise ValueError("nilpotent oracle limited to class <= 2")
    if box_bound > NILPOTENT_ORACLE_MAX_BOX:
        raise ValueError(f"box_bound limited to {NILPOTENT_ORACLE_MAX_BOX}")
    if min_bound < 2 or min_bound > box_bound:
        raise ValueError("need 2 <= min_bound <= box_bound")
    if not phi.is_integral():
        raise ValueError("phi must map N into N")
    if phi.has_eigenvalue_one():
        raise ValueError("phi has eigenvalue 1: infinitely many classes")

    gens = [g.basis_element(*b) for b in g.basis()]
    gens += [g.inverse(x) for x in gens]
    moves = [(x, g.inverse(phi(x))) for x in gens]

    census = {}
    for bound in range(min_bound, box_bound + 1):
        points = [tuple(p) for p in itertools.product(range(-bound, bound + 1), repeat=g.dimension)]
        inside = set(points)
        classes = DisjointSet(points)
        for p in points:
            alpha = g.element(*p)
            for gamma, phi_gamma_inv in moves:
                beta = g.product(gamma, alpha, phi_gamma_inv).flat
                key = tuple(int(v) for v in beta)
                if key in inside:
                    classes.merge(p, key)
        core = bound - 2
        census[bound] = len({classes[p] for p in points if max(map(abs, p)) <= core})
    return census


def setup_from_layers(layers: Sequence[Tuple[Sequence[Sequence], Sequence[Sequence]]]) -> TwistedSetup:
    """Convenience constructor from ``[(B, M), ...]`` pairs."""
    return TwistedSetup(tuple(LayerDatum(b, m) for b, m in layers))
