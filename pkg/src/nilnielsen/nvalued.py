"""Affine n-valued maps on nilmanifolds: sigma data, components, R(f) and N(f).

A map is given by a basic lifting of n affine lift-factors x -> g_i phi_i(x)
on G. Lift indices are 0-based in the Python API and 1-based in reports.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from scipy.cluster.hierarchy import DisjointSet

from .endomorphism import Endomorphism, validate_homomorphism
from .errors import SigmaError
from .group import GroupElement, GroupPresentation, is_lattice_element, random_lattice_element
from .linalg import ExtendedCount, abs_inf, matvec
from .report import CheckReport


@dataclass(frozen=True)
class AffineLift:
    translation: GroupElement
    endomorphism: Endomorphism

    def apply(self, x: GroupElement) -> GroupElement:
        """g phi(x) for a lattice element x."""
        g = self.endomorphism.group
        return g.multiply(self.translation, self.endomorphism(x))


@dataclass(frozen=True)
class AffineNValuedMap:
    group: GroupPresentation
    lifts: Tuple[AffineLift, ...]

    def __post_init__(self):
        object.__setattr__(self, "lifts", tuple(self.lifts))
        if not self.lifts:
            raise ValueError("an n-valued map needs n >= 1 lifts")
        for lift in self.lifts:
            if lift.endomorphism.group != self.group:
                raise ValueError("all lifts must live on the map's group presentation")
            self.group.check(lift.translation)

    @property
    def n(self) -> int:
        return len(self.lifts)

    def permuted(self, order: Sequence[int]) -> "AffineNValuedMap":
        return AffineNValuedMap(self.group, tuple(self.lifts[i] for i in order))

    def retranslated(self, i: int, gamma: GroupElement) -> "AffineNValuedMap":
        """Replace g_i by gamma g_i (another basic lifting of the same map)."""
        lifts = list(self.lifts)
        lifts[i] = AffineLift(self.group.multiply(gamma, lifts[i].translation), lifts[i].endomorphism)
        return AffineNValuedMap(self.group, tuple(lifts))


@dataclass(frozen=True)
class SigmaData:
    """sigma[k][i] = sigma_gamma(i) and translations[k][i] = phi_i(gamma) per generator."""

    generators: Tuple[GroupElement, ...]
    sigma: Tuple[Tuple[int, ...], ...]
    translations: Tuple[Tuple[GroupElement, ...], ...]

    @property
    def n(self) -> int:
        return len(self.sigma[0])


@dataclass(frozen=True)
class ComponentReport:
    orbit: Tuple[int, ...]
    representative: int
    det_value: Fraction
    R_component: ExtendedCount
    N_component: int
    index_sign: int


@dataclass(frozen=True)
class MapReport:
    reidemeister: ExtendedCount
    nielsen: int
    components: Tuple[ComponentReport, ...]


# --------------------------------------------------------------------------
# sigma data

def match_lifts(m: AffineNValuedMap, gamma: GroupElement):
    """Solve f_i o gamma = delta_i o f_j for every lift i.

    Returns ``(sigma, deltas)`` where ``sigma[j] = i`` whenever
    ``sigma_gamma^{-1}(i) = j`` and ``deltas[i]`` is the lattice element
    phi_i(gamma) = g_i varphi_i(gamma) g_j^{-1}.
    """
    g = m.group
    n = m.n
    sigma_inv, deltas = [], []
    for i, lift in enumerate(m.lifts):
        h = g.multiply(lift.translation, lift.endomorphism(gamma))
        found = []
        for j, other in enumerate(m.lifts):
            if other.endomorphism != lift.endomorphism:
                continue
            delta = g.multiply(h, g.inverse(other.translation))
            if is_lattice_element(delta):
                found.append((j, delta))
        if not found:
            raise SigmaError("no match", gamma, i,
                             f"lift {i + 1} composed with generator {gamma} matches no lift")
        if len(found) > 1:
            raise SigmaError("ambiguous match", gamma, i,
                             f"lift {i + 1} composed with generator {gamma} matches lifts "
                             f"{[j + 1 for j, _ in found]}")
        sigma_inv.append(found[0][0])
        deltas.append(found[0][1])
    if sorted(sigma_inv) != list(range(n)):
        raise SigmaError("ambiguous match", gamma, None,
                         f"matching for generator {gamma} is not a permutation: {sigma_inv}")
    sigma = [0] * n
    for i, j in enumerate(sigma_inv):
        sigma[j] = i
    return tuple(sigma), tuple(deltas)


def compute_sigma(m: AffineNValuedMap) -> SigmaData:
    """Sigma permutations and lattice translations on the Malcev basis generators."""
    gens = tuple(m.group.basis_element(*b) for b in m.group.basis())
    sigmas, translations = [], []
    for gamma in gens:
        s, d = match_lifts(m, gamma)
        sigmas.append(s)
        translations.append(d)
    return SigmaData(gens, tuple(sigmas), tuple(translations))


def sigma_orbits(s: SigmaData) -> List[Tuple[int, ...]]:
    """Orbits of {0..n-1} under the generator permutations, sorted by least element."""
    classes = DisjointSet(range(s.n))
    for perm in s.sigma:
        for i, j in enumerate(perm):
            classes.merge(i, j)
    return sorted((tuple(sorted(c)) for c in classes.subsets()), key=lambda orbit: orbit[0])


def sigma_cocycle_check(s: SigmaData, m: AffineNValuedMap, sample_count: int = 200,
                        seed: int = 42, bound: int = 5) -> CheckReport:
    """Check sigma_{gd} = sigma_g o sigma_d and phi_i(gd) = phi_i(g) phi_{sigma_g^-1(i)}(d).

    Every ordered pair of generators and generator inverses is tried, then
    ``sample_count`` random lattice pairs.
    """
    g = m.group
    report = CheckReport("sigma cocycle", samples=sample_count)
    for k, gamma in enumerate(s.generators):
        if match_lifts(m, gamma) != (s.sigma[k], s.translations[k]):
            return report.fail("stored sigma data disagrees with recomputation", gamma=gamma)
    gens = list(s.generators) + [g.inverse(x) for x in s.generators]
    pairs = [(x, y) for x in gens for y in gens]
    rng = random.Random(seed)
    pairs += [(random_lattice_element(g, rng, bound), random_lattice_element(g, rng, bound))
              for _ in range(sample_count)]
    for gamma, delta in pairs:
        sg, dg = match_lifts(m, gamma)
        sd, dd = match_lifts(m, delta)
        sgd, dgd = match_lifts(m, g.multiply(gamma, delta))
        composed = tuple(sg[sd[i]] for i in range(m.n))
        if sgd != composed:
            return report.fail("sigma is not a homomorphism", gamma=gamma, delta=delta,
                               product=sgd, composed=composed)
        sg_inv = {v: i for i, v in enumerate(sg)}
        for i in range(m.n):
            expected = g.multiply(dg[i], dd[sg_inv[i]])
            if dgd[i] != expected:
                return report.fail("translation cocycle fails", gamma=gamma, delta=delta,
                                   lift=i + 1, product=dgd[i], expected=expected)
    return report


# --------------------------------------------------------------------------
# validation

def validate_nvalued(m: AffineNValuedMap, sample_count: int = 200, seed: int = 42,
                     bound: int = 5) -> CheckReport:
    """The lifted points must lie in distinct N-orbits.

    Exact for pairs with equal linear parts (g_i g_j^-1 must not lie in N).
    Pairs with different linear parts are sampled at lattice points x, and
    for abelian groups also at rational points of [0,1)^k shifted by the
    lattice, so that report is evidence only.
    """
    g = m.group
    report = CheckReport("n-valued disjointness", samples=sample_count, strength="proof")
    rng = random.Random(seed)
    mixed = []
    for i in range(m.n):
        for j in range(i + 1, m.n):
            li, lj = m.lifts[i], m.lifts[j]
            if li.endomorphism == lj.endomorphism:
                diff = g.multiply(li.translation, g.inverse(lj.translation))
                if is_lattice_element(diff):
                    report.violations.append({"pair": (i + 1, j + 1), "x": "any", "difference": diff})
            else:
                mixed.append((i, j))
    if mixed:
        report.strength = "evidence"
        points = [random_lattice_element(g, rng, bound) for _ in range(sample_count)]
        for i, j in mixed:
            li, lj = m.lifts[i], m.lifts[j]
            for x in points:
                diff = g.multiply(li.apply(x), g.inverse(lj.apply(x)))
                if is_lattice_element(diff):
                    report.violations.append({"pair": (i + 1, j + 1), "x": x, "difference": diff})
                    break
            else:
                if g.nilpotency_class == 1:
                    _abelian_rational_samples(m, i, j, rng, sample_count, bound, report)
    if report.violations:
        first = report.violations[0]
        report.fail(f"lifts {first['pair'][0]} and {first['pair'][1]} hit the same N-orbit", **first)
    return report


def _abelian_rational_samples(m, i, j, rng, count, bound, report):
    # on R^k the linear parts act by their matrices, so rational x is exact
    mi = m.lifts[i].endomorphism.layer_matrices()[0]
    mj = m.lifts[j].endomorphism.layer_matrices()[0]
    gi = m.lifts[i].translation.flat
    gj = m.lifts[j].translation.flat
    k = len(gi)
    for _ in range(count):
        x = tuple(rng.randint(-bound, bound) + Fraction(rng.randint(0, 11), 12) for _ in range(k))
        diff = tuple(a + b - c - d for a, b, c, d in zip(gi, matvec(mi, x), gj, matvec(mj, x)))
        if all(v.denominator == 1 for v in diff):
            report.violations.append({"pair": (i + 1, j + 1), "x": x, "difference": diff})
            return


def validate_map(m: AffineNValuedMap, sample_count: int = 200, seed: int = 42) -> List[CheckReport]:
    """Homomorphism checks for each distinct linear part, then disjointness and sigma."""
    reports = []
    seen = []
    for lift in m.lifts:
        if lift.endomorphism not in seen:
            seen.append(lift.endomorphism)
            reports.append(validate_homomorphism(lift.endomorphism, sample_count, seed))
    reports.append(validate_nvalued(m, sample_count, seed))
    sigma_report = CheckReport("sigma matching", strength="proof")
    try:
        s = compute_sigma(m)
    except SigmaError as exc:
        reports.append(sigma_report.fail(f"{exc.kind}: {exc}", generator=exc.generator,
                                         lift="-" if exc.lift is None else exc.lift + 1))
        return reports
    reports.append(sigma_report)
    reports.append(sigma_cocycle_check(s, m, sample_count, seed))
    return reports


# --------------------------------------------------------------------------
# counts

def lift_determinants(m: AffineNValuedMap) -> Tuple[Fraction, ...]:
    return tuple(lift.endomorphism.det_i_minus_differential() for lift in m.lifts)


def reidemeister(m: AffineNValuedMap) -> ExtendedCount:
    """Sum over all lifts of |det(I - phi_i*)|_inf."""
    compute_sigma(m)
    total = ExtendedCount(0)
    for d in lift_determinants(m):
        total = total + abs_inf(d)
    return total


def nielsen(m: AffineNValuedMap) -> int:
    """Sum over all lifts of |det(I - phi_i*)| (zero where the determinant vanishes)."""
    compute_sigma(m)
    total = sum((abs(d) for d in lift_determinants(m)), Fraction(0))
    if total.denominator != 1:
        raise ArithmeticError(f"Nielsen sum {total} is not an integer; the lift data is inconsistent")
    return int(total)


def component_reports(m: AffineNValuedMap, sigma: SigmaData | None = None) -> Tuple[ComponentReport, ...]:
    """One report per sigma-orbit (irreducible component)."""
    sigma = compute_sigma(m) if sigma is None else sigma
    out = []
    for orbit in sigma_orbits(sigma):
        rep = orbit[0]
        phi = m.lifts[rep].endomorphism
        if any(m.lifts[i].endomorphism != phi for i in orbit):
            raise AssertionError(f"lifts in sigma-orbit {[i + 1 for i in orbit]} have different linear parts")
        d = phi.det_i_minus_differential()
        size = len(orbit)
        r = size * abs_inf(d)
        n_comp = size * abs(d)
        if n_comp.denominator != 1 or (r.is_finite and not r.is_integral):
            raise ArithmeticError(f"component {[i + 1 for i in orbit]} has non-integral count {n_comp}")
        sign = (d > 0) - (d < 0)
        out.append(ComponentReport(orbit, rep, d, r, int(n_comp), sign))
    return tuple(out)


def analyze(m: AffineNValuedMap) -> MapReport:
    components = component_reports(m)
    total_r = ExtendedCount(0)
    for c in components:
        total_r = total_r + c.R_component
    total_n = sum(c.N_component for c in components)
    return MapReport(total_r, total_n, components)
