"""Geometric checks on tori: actual fixed points of affine n-valued maps.

On T^k = Z^k \\ R^k a point x in [0,1)^k is fixed by the lift (g, M) when
(I - M) x = g + z for some integer vector z.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .linalg import (
    as_int_matrix, as_matrix, cofactor_det, det, i_minus, inverse, is_integral, matmul, matvec,
)
from .nvalued import AffineNValuedMap, compute_sigma, nielsen

BRUTE_FORCE_MAX_RANK = 3
BRUTE_FORCE_MAX_POINTS = 2_000_000


@dataclass(frozen=True)
class TorusFixedPoint:
    coordinates: Tuple[Fraction, ...]
    lift_index: int  # 0-based
    translation_class: Tuple[int, ...]  # z with (I - M) x = g + z


class InfiniteFixedSet(ValueError):
    def __init__(self, lift):
        super().__init__(f"lift {lift + 1} has det(I - M) = 0: infinite fixed set "
                         "(skip singular lifts to ignore it)")
        self.lift = lift


def _require_abelian(m: AffineNValuedMap):
    if m.group.nilpotency_class != 1:
        raise ValueError("the torus oracle only handles abelian presentations")


def lift_fixed_points(g: Tuple[Fraction, ...], mat) -> List[Tuple[Tuple[Fraction, ...], Tuple[int, ...]]]:
    """All x in [0,1)^k with (I - M) x - g integral, with their witnesses z.

    z ranges over the integer points of the bounding box of (I - M)[0,1]^k - g.
    """
    a = i_minus(mat)
    a_inv = inverse(a)
    ranges = []
    for r, row in enumerate(a):
        lo = sum((v for v in row if v < 0), Fraction(0)) - g[r]
        hi = sum((v for v in row if v > 0), Fraction(0)) - g[r]
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    out = []
    for z in itertools.product(*ranges):
        x = matvec(a_inv, tuple(gi + zi for gi, zi in zip(g, z)))
        if all(0 <= v < 1 for v in x):
            out.append((x, tuple(z)))
    return out


def enumerate_fixed_points(m: AffineNValuedMap, skip_singular: bool = False) -> List[TorusFixedPoint]:
    """Fixed points of the n-valued torus map, deduplicated across lifts.

    Lifts in the same sigma-class share fixed points on the torus, so only
    the first lift to reach a point is recorded for it.
    """
    _require_abelian(m)
    compute_sigma(m)
    points: Dict[Tuple[Fraction, ...], TorusFixedPoint] = {}
    for i, lift in enumerate(m.lifts):
        mat = lift.endomorphism.layer_matrices()[0]
        if det(i_minus(mat)) == 0:
            if skip_singular:
                continue
            raise InfiniteFixedSet(i)
        for x, z in lift_fixed_points(lift.translation.flat, mat):
            if x not in points:
                points[x] = TorusFixedPoint(x, i, z)
    return sorted(points.values(), key=lambda p: p.coordinates)


def count_matches_nielsen(m: AffineNValuedMap) -> Tuple[bool, dict]:
    """Compare the number of actual fixed points with N(f)."""
    points = enumerate_fixed_points(m)
    n = nielsen(m)
    return len(points) == n, {"fixed_points": len(points), "nielsen": n}


def brute_force_reidemeister_z_k(B, M) -> int:
    """Index of (I - M) B Z^k in Z^k by counting lattice residues.

    With q = |det| (cofactor expansion) the sublattice contains q Z^k; the
    index is q^k divided by the number of v in {0..q-1}^k that lie in the
    sublattice, membership decided by an exact rational solve.
    """
    b = as_int_matrix(B)
    mat = as_matrix(M)
    k = len(b)
    if k > BRUTE_FORCE_MAX_RANK:
        raise ValueError(f"brute force limited to rank <= {BRUTE_FORCE_MAX_RANK}")
    a = matmul(i_minus(mat), b)
    if not is_integral(a):
        raise ValueError("(I - M) B must be integral")
    q = abs(cofactor_det(a))
    if q == 0:
        raise ValueError("(I - M) B is singular")
    q = int(q)
    if q ** k > BRUTE_FORCE_MAX_POINTS:
        raise ValueError(f"{q}^{k} residues exceed the brute-force limit")
    a_inv = inverse(a)
    members = sum(1 for v in itertools.product(range(q), repeat=k)
                  if all(w.denominator == 1 for w in matvec(a_inv, v)))
    assert q ** k % members == 0
    return q ** k // members
