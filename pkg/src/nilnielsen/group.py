"""Nilpotent Lie groups in Malcev coordinates with a polynomial group law.

An element is a tuple of per-layer rational coordinate tuples. The product is

    (x * y)_i = x_i + y_i + p_i(x_1..x_{i-1}, y_1..y_{i-1}),    p_1 = 0,

where each coordinate of p_i is an explicit polynomial with rational
coefficients. Integer coordinates are the lattice N inside G.

Indices in the Python API are 0-based: ``(layer, position)``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

from .errors import DimensionError
from .linalg import format_rational, to_fraction
from .report import CheckReport

Var = Tuple[int, int, int]  # (layer, position, exponent)


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    x: Tuple[Var, ...] = ()
    y: Tuple[Var, ...] = ()

    def __call__(self, x, y) -> Fraction:
        value = self.coeff
        for layer, pos, exp in self.x:
            value *= x[layer][pos] ** exp
        for layer, pos, exp in self.y:
            value *= y[layer][pos] ** exp
        return value


@dataclass(frozen=True)
class Polynomial:
    terms: Tuple[Term, ...] = ()

    def __call__(self, x, y) -> Fraction:
        return sum((t(x, y) for t in self.terms), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def variables(self) -> Iterator[Tuple[str, int, int]]:
        for t in self.terms:
            for layer, pos, _ in t.x:
                yield "x", layer, pos
            for layer, pos, _ in t.y:
                yield "y", layer, pos


ZERO_POLY = Polynomial()


@dataclass(frozen=True)
class GroupElement:
    coords: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_layers(cls, layers: Sequence[Sequence]) -> "GroupElement":
        return cls(tuple(tuple(to_fraction(v) for v in layer) for layer in layers))

    @property
    def flat(self) -> Tuple[Fraction, ...]:
        return tuple(v for layer in self.coords for v in layer)

    def is_identity(self) -> bool:
        return not any(self.flat)

    def __str__(self):
        return "(" + ", ".join(format_rational(v) for v in self.flat) + ")"


def is_lattice_element(x: GroupElement) -> bool:
    """True iff every Malcev coordinate of ``x`` is an integer."""
    return all(v.denominator == 1 for v in x.flat)


@dataclass(frozen=True)
class GroupPresentation:
    """Ranks (k_1, ..., k_c) and the law polynomials ``law[i][j]`` = p_{i,j}.

    ``law[0]`` is all zero. Construct through ``GroupPresentation.create``
    (or ``builtin``) so that variable references are validated.
    """

    ranks: Tuple[int, ...]
    law: Tuple[Tuple[Polynomial, ...], ...]
    name: str = field(default="custom", compare=False)

    @classmethod
    def create(cls, ranks: Sequence[int], law=None, name="custom") -> "GroupPresentation":
        """``law`` maps ``(layer, position)`` to a Polynomial; omitted means zero."""
        ranks = tuple(int(k) for k in ranks)
        if not ranks or any(k < 1 for k in ranks):
            raise DimensionError(f"ranks must be positive integers, got {ranks}")
        law = dict(law or {})
        table = [[ZERO_POLY] * k for k in ranks]
        for (layer, pos), poly in law.items():
            if not (0 <= layer < len(ranks) and 0 <= pos < ranks[layer]):
                raise DimensionError(f"law target ({layer}, {pos}) is out of range")
            for _, vl, vp in poly.variables():
                if not (0 <= vl < layer):
                    raise DimensionError(
                        f"p[{layer}][{pos}] references layer {vl}; only lower layers are allowed")
                if not (0 <= vp < ranks[vl]):
                    raise DimensionError(f"p[{layer}][{pos}] references missing coordinate ({vl}, {vp})")
            table[layer][pos] = poly
        return cls(ranks, tuple(tuple(row) for row in table), name)

    @property
    def nilpotency_class(self) -> int:
        return len(self.ranks)

    @property
    def dimension(self) -> int:
        return sum(self.ranks)

    # -- elements -----------------------------------------------------------

    def element(self, *values) -> GroupElement:
        """Element from flat coordinates, e.g. ``heis.element(1, 0, 2)``."""
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = tuple(values[0])
        if len(values) != self.dimension:
            raise DimensionError(f"expected {self.dimension} coordinates, got {len(values)}")
        layers, start = [], 0
        for k in self.ranks:
            layers.append(values[start:start + k])
            start += k
        return GroupElement.from_layers(layers)

    def identity(self) -> GroupElement:
        return GroupElement(tuple((Fraction(0),) * k for k in self.ranks))

    def basis(self) -> Tuple[Tuple[int, int], ...]:
        """Basis indices in canonical order."""
        return tuple((i, j) for i, k in enumerate(self.ranks) for j in range(k))

    def basis_element(self, layer: int, pos: int) -> GroupElement:
        return GroupElement(tuple(
            tuple(Fraction(int(i == layer and j == pos)) for j in range(k))
            for i, k in enumerate(self.ranks)))

    def check(self, x: GroupElement) -> GroupElement:
        if tuple(len(layer) for layer in x.coords) != self.ranks:
            raise DimensionError(
                f"element with layer sizes {[len(l) for l in x.coords]} does not fit ranks {self.ranks}")
        return x

    # -- arithmetic ---------------------------------------------------------

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self.check(x)
        self.check(y)
        xs, ys = x.coords, y.coords
        out = []
        for i, polys in enumerate(self.law):
            out.append(tuple(a + b + (p(xs, ys) if p else 0)
                             for a, b, p in zip(xs[i], ys[i], polys)))
        return GroupElement(tuple(out))

    def inverse(self, x: GroupElement) -> GroupElement:
        # solve x*y = 1 layer by layer: y_i = -x_i - p_i(x, y)
        self.check(x)
        xs = x.coords
        ys = [tuple(-v for v in xs[0])]
        for i in range(1, len(self.ranks)):
            partial = tuple(ys) + tuple((Fraction(0),) * k for k in self.ranks[i:])
            ys.append(tuple(-a - (p(xs, partial) if p else 0)
                            for a, p in zip(xs[i], self.law[i])))
        return GroupElement(tuple(ys))

    def power(self, x: GroupElement, m: int) -> GroupElement:
        """x**m by square-and-multiply; negative m goes through the inverse."""
        if m < 0:
            x, m = self.inverse(x), -m
        result = self.identity()
        base = self.check(x)
        while m:
            if m & 1:
                result = self.multiply(result, base)
            m >>= 1
            if m:
                base = self.multiply(base, base)
        return result

    def commutator(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """[x, y] = x^-1 y^-1 x y."""
        return self.product(self.inverse(x), self.inverse(y), x, y)

    def product(self, *elements: GroupElement) -> GroupElement:
        result = self.identity()
        for e in elements:
            result = self.multiply(result, e)
        return result

    def word_exponents(self, x: GroupElement) -> Tuple[Tuple[int, ...], ...]:
        """Exponents e with x = prod_{i,j} a_{i,j}^{e_{i,j}} in canonical order.

        The law need not be written in normal-form coordinates (the matrix
        model of the Heisenberg group is not), so the word is peeled off
        layer by layer instead of being read from the coordinates.
        """
        self.check(x)
        exps = []
        rest = x
        for i, k in enumerate(self.ranks):
            if any(v.denominator != 1 for v in rest.coords[i]):
                raise ValueError(f"{x} is not a word in the basis with integer exponents")
            e = tuple(int(v) for v in rest.coords[i])
            exps.append(e)
            prefix = self.product(*(self.power(self.basis_element(i, j), e[j])
                                    for j in range(k) if e[j]))
            rest = self.multiply(self.inverse(prefix), rest)
        assert rest.is_identity(), "layer peeling must exhaust the element"
        return tuple(exps)


# --------------------------------------------------------------------------
# built-in presentations

def abelian(k: int) -> GroupPresentation:
    """Z^k inside R^k: one layer, no law polynomials."""
    return GroupPresentation.create((k,), name=f"abelian({k})")


def heisenberg() -> GroupPresentation:
    """Upper unitriangular 3x3 matrices [[1,x,z],[0,1,y],[0,0,1]].

    (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2).
    """
    p = Polynomial((Term(Fraction(1), x=((0, 0, 1),), y=((0, 1, 1),)),))
    return GroupPresentation.create((2, 1), {(1, 0): p}, name="heisenberg")


_ABELIAN_RE = re.compile(r"^abelian\s*\(\s*(\d+)\s*\)$")


def builtin(name: str, rank: int | None = None) -> GroupPresentation:
    """``"heisenberg"``, ``"abelian"`` (with ``rank``) or ``"abelian(k)"``."""
    key = name.strip().lower()
    if key == "heisenberg":
        return heisenberg()
    match = _ABELIAN_RE.match(key)
    if match:
        return abelian(int(match.group(1)))
    if key == "abelian":
        if rank is None or rank < 1:
            raise ValueError("builtin 'abelian' needs a positive rank")
        return abelian(rank)
    raise ValueError(f"unknown builtin presentation {name!r}")


# --------------------------------------------------------------------------
# sampled verification

def random_lattice_element(g: GroupPresentation, rng: random.Random, bound: int = 5) -> GroupElement:
    return g.element(*(rng.randint(-bound, bound) for _ in range(g.dimension)))


def random_rational_element(g: GroupPresentation, rng: random.Random, bound: int = 5,
                            max_den: int = 6) -> GroupElement:
    return g.element(*(Fraction(rng.randint(-bound * max_den, bound * max_den),
                                rng.randint(1, max_den)) for _ in range(g.dimension)))


def check_group_axioms(g: GroupPresentation, sample_count: int = 200, seed: int = 42,
                       bound: int = 5) -> CheckReport:
    """Sampled associativity, identity, inverse and lattice closure.

    Evidence only: a polynomial law cannot be certified associative by
    sampling. Stops at the first counterexample.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    rng = random.Random(seed)
    e = g.identity()
    report = CheckReport("group axioms", samples=sample_count)
    for _ in range(sample_count):
        x, y, z = (random_lattice_element(g, rng, bound) for _ in range(3))
        if g.multiply(g.multiply(x, y), z) != g.multiply(x, g.multiply(y, z)):
            return report.fail("associativity", x=x, y=y, z=z)
        if g.multiply(x, e) != x or g.multiply(e, x) != x:
            return report.fail("identity", x=x)
        xi = g.inverse(x)
        if g.multiply(x, xi) != e or g.multiply(xi, x) != e:
            return report.fail("lattice inverse", x=x)
        if not is_lattice_element(g.multiply(x, y)):
            return report.fail("lattice closure under multiply", x=x, y=y)
        if not is_lattice_element(xi):
            return report.fail("lattice closure under inverse", x=x)
        q = random_rational_element(g, rng, bound)
        qi = g.inverse(q)
        if g.multiply(q, qi) != e or g.multiply(qi, q) != e:
            return report.fail("rational inverse", x=q)
    return report
