"""Endomorphisms given by the images of every Malcev basis element."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Tuple

from .errors import DimensionError, FiltrationError
from .group import GroupElement, GroupPresentation, is_lattice_element, random_lattice_element
from .linalg import Matrix, det, i_minus
from .report import CheckReport


@dataclass(frozen=True)
class Endomorphism:
    group: GroupPresentation
    images: Tuple[Tuple[GroupElement, ...], ...]  # images[i][j] = phi(a_{i,j})

    def __post_init__(self):
        g = self.group
        if tuple(len(layer) for layer in self.images) != g.ranks:
            raise DimensionError("one image is required for every basis element")
        for i, layer in enumerate(self.images):
            for j, img in enumerate(layer):
                g.check(img)
                for lower in range(i):
                    if any(img.coords[lower]):
                        raise FiltrationError(
                            (i, j),
                            f"image of basis element ({i}, {j}) has nonzero coordinates in layer {lower}")

    @classmethod
    def from_images(cls, group: GroupPresentation,
                    images: Mapping[Tuple[int, int], GroupElement]) -> "Endomorphism":
        missing = [b for b in group.basis() if b not in images]
        if missing:
            raise DimensionError(f"missing images for basis elements {missing}")
        extra = [b for b in images if b not in set(group.basis())]
        if extra:
            raise DimensionError(f"images given for unknown basis elements {extra}")
        return cls(group, tuple(tuple(images[(i, j)] for j in range(k))
                                for i, k in enumerate(group.ranks)))

    @classmethod
    def identity(cls, group: GroupPresentation) -> "Endomorphism":
        return cls.from_images(group, {b: group.basis_element(*b) for b in group.basis()})

    @classmethod
    def linear(cls, group: GroupPresentation, matrix: Sequence[Sequence]) -> "Endomorphism":
        """Endomorphism of an abelian presentation given by its matrix."""
        if group.nilpotency_class != 1:
            raise ValueError("linear() only applies to abelian presentations")
        k = group.ranks[0]
        if len(matrix) != k or any(len(row) != k for row in matrix):
            raise DimensionError(f"expected a {k}x{k} matrix")
        cols = list(zip(*matrix))
        return cls.from_images(group, {(0, j): group.element(*cols[j]) for j in range(k)})

    def image(self, layer: int, pos: int) -> GroupElement:
        return self.images[layer][pos]

    # ------------------------------------------------------------------

    def layer_matrices(self) -> Tuple[Matrix, ...]:
        """M_i: column j holds the layer-i coordinates of phi(a_{i,j})."""
        out = []
        for i, layer in enumerate(self.images):
            cols = [img.coords[i] for img in layer]
            out.append(tuple(tuple(col[r] for col in cols) for r in range(len(cols))))
        return tuple(out)

    def evaluate_on_lattice(self, gamma: GroupElement) -> GroupElement:
        """phi(gamma) for a lattice element gamma.

        gamma is rewritten as the ordered word prod a_{i,j}^{e_{i,j}} and the
        images are multiplied in the same order.
        """
        g = self.group
        g.check(gamma)
        if not is_lattice_element(gamma):
            raise ValueError(f"{gamma} is not a lattice element")
        exps = g.word_exponents(gamma)
        factors = [g.power(self.images[i][j], exps[i][j])
                   for i, j in g.basis() if exps[i][j]]
        return g.product(*factors)

    __call__ = evaluate_on_lattice

    def compose(self, inner: "Endomorphism") -> "Endomorphism":
        """self o inner; the images of ``inner`` must be lattice elements."""
        if inner.group != self.group:
            raise ValueError("cannot compose endomorphisms of different groups")
        return Endomorphism.from_images(
            self.group, {b: self.evaluate_on_lattice(inner.image(*b)) for b in self.group.basis()})

    def layer_determinants(self) -> Tuple[Fraction, ...]:
        return tuple(det(i_minus(m)) for m in self.layer_matrices())

    def det_i_minus_differential(self) -> Fraction:
        """det(I - phi_*), the product of det(I - M_i) over the layers."""
        result = Fraction(1)
        for d in self.layer_determinants():
            result *= d
        return result

    def has_eigenvalue_one(self) -> bool:
        return any(d == 0 for d in self.layer_determinants())

    def is_integral(self) -> bool:
        return all(is_lattice_element(img) for layer in self.images for img in layer)


def validate_homomorphism(phi: Endomorphism, sample_count: int = 200, seed: int = 42,
                          bound: int = 5) -> CheckReport:
    """Check phi(xy) = phi(x) phi(y) on lattice elements.

    All ordered pairs of basis elements (and their inverses) are tried first,
    then ``sample_count`` random pairs with coordinates in [-bound, bound].
    """
    g = phi.group
    report = CheckReport("homomorphism", samples=sample_count)
    gens = [g.basis_element(*b) for b in g.basis()]
    gens += [g.inverse(x) for x in gens]
    pairs = [(x, y) for x in gens for y in gens]
    rng = random.Random(seed)
    pairs += [(random_lattice_element(g, rng, bound), random_lattice_element(g, rng, bound))
              for _ in range(sample_count)]
    for x, y in pairs:
        lhs = phi(g.multiply(x, y))
        rhs = g.multiply(phi(x), phi(y))
        if lhs != rhs:
            return report.fail("phi(xy) != phi(x)phi(y)", x=x, y=y, lhs=lhs, rhs=rhs)
    return report

