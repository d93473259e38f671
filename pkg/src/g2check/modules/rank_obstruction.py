"""
Rank obstructions inside m.

The elements of m of rank at most two form two parameter families; no
three-dimensional subspace of m consists of such elements only. Every
seven-dimensional non-abelian nilpotent metric algebra of index three has a
three-dimensional subalgebra of ad-matrices of constant rank two, so its
adjoint image cannot sit inside m.
"""
from __future__ import annotations

import itertools
import logging

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from joblib import Parallel, delayed

from .catalog import CatalogEntry
from .exact_linalg import (
    HomCubicPoly3,
    Mat,
    PolyMat,
    PolyVector,
    Subspace,
    Vector,
    kernel,
    minors,
    pencil,
    poly_column,
    rank,
    rank_of_vectors,
    rref_subspace,
    solve,
    unit_vector,
    vanishing_minors,
    whole_space,
)
from .g2_model import MElement, family_a, m_structure
from .lie_algebra import (
    MetricLieAlgebra,
    ad_matrix,
    adjoint_image,
    bracket,
    derived_algebra,
    is_abelian,
    nilpotency_class,
    witt_decomposition,
)

NO_RANK_TWO_SUBALGEBRA = "no three-dimensional subspace of m has all nonzero elements of rank at most two"


class ClassificationError(ValueError):
    pass


class RefutationError(ValueError):
    pass


class RankTag(Enum):
    ZERO = "Zero"
    FAMILY_A = "FamilyA"
    FAMILY_B = "FamilyB"
    RANK_ABOVE_2 = "RankAbove2"


@dataclass(frozen=True)
class RankClass:
    """
    params holds (u3, u5, u6) for FamilyA and (u2, u4, u6) for FamilyB.
    """

    tag: RankTag
    rank: int
    params: tuple[Fraction, ...] = ()

    @property
    def at_most_two(self) -> bool:
        return self.rank <= 2


def classify_rank2(e: MElement) -> RankClass:
    r = rank(e.to_matrix())
    if e.is_zero():
        return RankClass(RankTag.ZERO, 0)
    if r > 2:
        return RankClass(RankTag.RANK_ABOVE_2, r)
    u1, u2, u3, u4, u5, u6 = e.u
    if u1 != 0:
        raise ClassificationError(f"{e.u} has rank {r} but u1 != 0")
    if u2 == 0 and u4 == 0:
        return RankClass(RankTag.FAMILY_A, r, (u3, u5, u6))
    if u2 == 0 or u4 == 0 or u3 * u4 != 4 * u2 * u2 or 2 * u2 * u5 != -u4 * u4:
        raise ClassificationError(f"{e.u} has rank {r} but lies in neither family")
    return RankClass(RankTag.FAMILY_B, r, (u2, u4, u6))


def predicted_rank_at_most_two(u: Sequence[Fraction]) -> bool:
    """
    Rank <= 2 read off from the parameters alone.
    """
    u1, u2, u3, u4, u5, u6 = u
    if u1 != 0:
        return False
    if u2 == 0 and u4 == 0:
        return u3 * u5 == 0
    if u2 == 0 or u4 == 0:
        return False
    return u3 * u4 == 4 * u2 * u2 and 2 * u2 * u5 == -u4 * u4


@dataclass
class ClassificationSweep:
    bound: int
    total: int = 0
    counts: Counter = field(default_factory=Counter)
    mismatches: list[tuple[Vector, int, str]] = field(default_factory=list)
    rank2_with_u1: int = 0
    family_b_identity_failures: int = 0

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.rank2_with_u1 == 0 and self.family_b_identity_failures == 0

    def merge(self, other: ClassificationSweep) -> None:
        self.total += other.total
        self.counts.update(other.counts)
        self.mismatches.extend(other.mismatches)
        self.rank2_with_u1 += other.rank2_with_u1
        self.family_b_identity_failures += other.family_b_identity_failures


def _sweep_slice(bound: int, u1: int) -> ClassificationSweep:
    values = range(-bound, bound + 1)
    part = ClassificationSweep(bound)
    for rest in itertools.product(values, repeat=5):
        e = MElement((u1,) + rest)
        part.total += 1
        r = rank(e.to_matrix())
        predicted = predicted_rank_at_most_two(e.u)
        if (r <= 2) != predicted:
            part.mismatches.append((e.u, r, "parameter prediction disagrees with exact rank"))
            continue
        try:
            found = classify_rank2(e)
        except ClassificationError as err:
            part.mismatches.append((e.u, r, str(err)))
            continue
        part.counts[found.tag.value] += 1
        if found.at_most_two and e.u[0] != 0:
            part.rank2_with_u1 += 1
        if found.tag is RankTag.FAMILY_B:
            _, u2, u3, u4, u5, _ = e.u
            if u3 * u4 != 4 * u2 * u2 or 2 * u2 * u5 != -u4 * u4:
                part.family_b_identity_failures += 1
    return part


def verify_rank2_classification(bound: int = 2, jobs: int = 1) -> ClassificationSweep:
    """
    Exhaustive check over u in {-bound..bound}^6 that rank <= 2 holds exactly
    on the zero element, the FamilyA locus and FamilyB.
    """
    if bound < 2:
        raise ValueError("the classification sweep needs bound >= 2")
    parts = Parallel(n_jobs=jobs)(delayed(_sweep_slice)(bound, u1) for u1 in range(-bound, bound + 1))
    sweep = ClassificationSweep(bound)
    for part in parts:
        sweep.merge(part)
    logging.info(f"rank classification: {sweep.total} matrices, {len(sweep.mismatches)} mismatches")
    return sweep


def at_most_two_count(sweep: ClassificationSweep) -> int:
    return sum(sweep.counts[tag.value] for tag in (RankTag.ZERO, RankTag.FAMILY_A, RankTag.FAMILY_B))


@dataclass
class LocusCertificate:
    """
    Rank <= 2 on A(u3, u5, u6) holds exactly on the union of the coordinate
    planes named in ``planes``.
    """

    planes: tuple[str, ...]
    minors_checked: int
    nonzero_minors: int
    witness_minor: Optional[HomCubicPoly3]
    grid_agrees: bool
    within_stated_condition: bool

    @property
    def certified(self) -> bool:
        return self.witness_minor is not None and self.grid_agrees and self.within_stated_condition


FAMILY_A_VARIABLES = ("u3", "u5", "u6")


def familyA_rank_locus(grid_bound: int = 2) -> LocusCertificate:
    """
    Rank <= 2 iff every 3x3 minor vanishes. A coordinate variable belongs to
    the locus when it divides every minor; a minor that is a monomial in
    those variables shows nothing else is in the locus.
    """
    generators = [family_a(*unit_vector(3, i)).to_matrix() for i in range(3)]
    expanded = minors(pencil(generators), 3)
    nonzero = [p for p in expanded if not p.is_zero()]
    dividing = [i for i in range(3) if all(p.divisible_by(i) for p in nonzero)]
    witness = next((p for p in nonzero if p.is_monomial() and p.support() <= set(dividing)), None)
    planes = tuple(f"{FAMILY_A_VARIABLES[i]} = 0" for i in dividing)

    def on_locus(point: Sequence[int]) -> bool:
        return any(point[i] == 0 for i in dividing)

    values = range(-grid_bound, grid_bound + 1)
    grid_agrees = all(
        (rank(family_a(*point).to_matrix()) <= 2) == on_locus(point) for point in itertools.product(values, repeat=3)
    )
    # one of u3, u5, u6 vanishes on the locus
    within = all(not on_locus(point) or 0 in point for point in itertools.product(values, repeat=3))
    logging.debug(f"FamilyA rank locus: {planes}, witness minor {witness}")
    return LocusCertificate(planes, len(expanded), len(nonzero), witness, grid_agrees, within)


@dataclass
class PairIdentityReport:
    sum_class: RankClass
    determinant: Fraction
    combination_checked: bool
    combination_holds: bool
    difference: Optional[MElement]

    @property
    def consistent(self) -> bool:
        if not self.combination_checked:
            return True
        return self.determinant == 0 and self.combination_holds


def familyB_pair_identity(b1: MElement, b2: MElement) -> PairIdentityReport:
    """
    For FamilyB elements B1, B2 whose sum has rank <= 2 with nonvanishing
    parameter sums: u2 v4 - u4 v2 = 0 and B1 - (u4/v4) B2 lies in FamilyA
    with only u6 surviving.
    """
    for e in (b1, b2):
        if classify_rank2(e).tag is not RankTag.FAMILY_B:
            raise ValueError(f"{e.u} is not in FamilyB")
    _, u2, _, u4, _, u6 = b1.u
    _, v2, _, v4, _, v6 = b2.u
    total = classify_rank2(b1 + b2)
    determinant = u2 * v4 - u4 * v2
    checked = total.at_most_two and u2 + v2 != 0 and u4 + v4 != 0
    holds = False
    difference = None
    if checked:
        ratio = u4 / v4
        difference = b1 - ratio * b2
        holds = difference == family_a(0, 0, u6 - ratio * v6)
    return PairIdentityReport(total, determinant, checked, holds, difference)


@dataclass(frozen=True)
class RefutationWitness:
    coefficients: tuple[Fraction, Fraction, Fraction]
    element: MElement
    rank: int
    case: str


def _as_element(e: MElement | Sequence) -> MElement:
    return e if isinstance(e, MElement) else MElement(e)


def _combine(coefficients: Sequence[Fraction], basis: Sequence[MElement]) -> MElement:
    total = MElement([0] * 6)
    for c, e in zip(coefficients, basis):
        if c:
            total = total + c * e
    return total


def _witness(coefficients: Sequence, basis: Sequence[MElement], case: str) -> RefutationWitness | None:
    coefficients = tuple(Fraction(c) for c in coefficients)
    element = _combine(coefficients, basis)
    r = rank(element.to_matrix())
    if r < 3:
        return None
    return RefutationWitness(coefficients, element, r, case)


def _by_cases(basis: Sequence[MElement]) -> RefutationWitness | None:
    for i, e in enumerate(basis):
        if e.u[0] != 0:
            return _witness(unit_vector(3, i), basis, "u1")
    projection = Mat(((e.u[1], e.u[3]) for e in basis), cols=2)
    projected_rank = rank(projection)
    if projected_rank == 0:
        # the subspace is the whole of FamilyA's parameter space
        system = Mat.from_columns([e.u for e in basis])
        c = solve(system, family_a(1, 1, 1).u)
        return _witness(c, basis, "family-a") if c is not None else None
    if projected_rank == 2:
        c = solve(projection.transpose(), (0, 1))
        return _witness(c, basis, "family-b-pair") if c is not None else None
    index = next(i for i, e in enumerate(basis) if e.u[1] != 0 or e.u[3] != 0)
    b = basis[index]
    if b.u[1] == 0 or b.u[3] == 0:
        return _witness(unit_vector(3, index), basis, "family-b-plus-a")
    for k in kernel(projection.transpose()).vectors:
        element = _combine(k, basis)
        if element.u[2] == 0 and element.u[4] == 0:
            continue
        # FamilyB pins u3 and u5 once (u2, u4) is fixed, so b + s k leaves it for some s
        for s in range(3):
            coefficients = [Fraction(int(i == index)) + s * k[i] for i in range(3)]
            found = _witness(coefficients, basis, "family-b-plus-a")
            if found is not None:
                return found
    return None


def refute_rank2_3d_subspace(basis: Sequence[MElement | Sequence]) -> RefutationWitness:
    """
    A combination of the three basis elements with rank >= 3.
    """
    basis = [_as_element(e) for e in basis]
    if len(basis) != 3 or rank_of_vectors([e.u for e in basis]) != 3:
        raise ValueError("refutation needs a basis of a three-dimensional subspace of m")
    found = _by_cases(basis)
    if found is not None:
        return found
    for coefficients in itertools.product(range(-2, 3), repeat=3):
        if any(coefficients):
            found = _witness(coefficients, basis, "grid")
            if found is not None:
                return found
    raise RefutationError(f"no combination of rank >= 3 in span{tuple(e.u for e in basis)}")


def _random_rational(rng: np.random.Generator, height: int) -> Fraction:
    return Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height + 1)))


def _random_element(rng: np.random.Generator, height: int, support: Iterable[int] = range(6)) -> MElement:
    u = [Fraction(0)] * 6
    for i in support:
        u[i] = _random_rational(rng, height)
    return MElement(u)


M_CENTER_LINE = MElement([0, 0, 0, 0, 0, 1])
M_SECOND_CENTER = MElement([0, 0, 0, 0, 1, 0])
DERIVED_SUPPORT = (1, 3, 4, 5)
SEARCH_MODES = ("generic", "central", "derived")


def _sample_subspace(rng: np.random.Generator, mode: str, height: int) -> list[MElement]:
    if mode == "central":
        # span{x, u5, u6} is a subalgebra for every x
        return [_random_element(rng, height), M_SECOND_CENTER, M_CENTER_LINE]
    if mode == "derived":
        return [_random_element(rng, height, DERIVED_SUPPORT), _random_element(rng, height, DERIVED_SUPPORT), M_CENTER_LINE]
    return [_random_element(rng, height) for _ in range(3)]


def is_closed_subspace(basis: Sequence[MElement]) -> bool:
    """
    Commutator closure, computed with the structure constants of m.
    """
    algebra = m_structure()
    span = rref_subspace((e.u for e in basis), 6)
    return all(span.contains(bracket(algebra, x.u, y.u)) for x, y in itertools.combinations(basis, 2))


def is_constant_rank_at_most_two(basis: Sequence[MElement]) -> bool:
    """
    All 3x3 minors of the pencil spanned by the basis vanish identically.
    """
    return vanishing_minors(pencil([e.to_matrix() for e in basis]), 3)


@dataclass
class SearchReport:
    trials: int
    seed: int
    sampled: Counter = field(default_factory=Counter)
    closed: int = 0
    degenerate: int = 0
    refutation_cases: Counter = field(default_factory=Counter)
    counterexample: Optional[tuple[MElement, ...]] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def merge(self, other: SearchReport) -> None:
        self.sampled.update(other.sampled)
        self.closed += other.closed
        self.degenerate += other.degenerate
        self.refutation_cases.update(other.refutation_cases)
        if self.counterexample is None:
            self.counterexample = other.counterexample


def _search_chunk(seed: int, start: int, stop: int, height: int) -> SearchReport:
    part = SearchReport(stop - start, seed)
    for trial in range(start, stop):
        rng = np.random.default_rng([seed, trial])
        mode = SEARCH_MODES[trial % len(SEARCH_MODES)]
        basis = _sample_subspace(rng, mode, height)
        part.sampled[mode] += 1
        if rank_of_vectors([e.u for e in basis]) < 3:
            part.degenerate += 1
            continue
        if not is_closed_subspace(basis):
            continue
        part.closed += 1
        try:
            part.refutation_cases[refute_rank2_3d_subspace(basis).case] += 1
        except RefutationError:
            if is_constant_rank_at_most_two(basis) and part.counterexample is None:
                part.counterexample = tuple(basis)
    return part


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    size = max(1, -(-total // max(1, jobs * 4)))
    return [(start, min(total, start + size)) for start in range(0, total, size)]


def random_search_rank2_subalgebra(trials: int, seed: int = 0, jobs: int = 1, height: int = 8) -> SearchReport:
    """
    Samples three-dimensional subspaces of m, keeps the subalgebras and looks
    for one with all nonzero elements of rank <= 2. Trial t draws from the
    generator seeded with (seed, t), so the outcome does not depend on ``jobs``.
    """
    if trials < 1:
        raise ValueError("the search needs at least one trial")
    parts = Parallel(n_jobs=jobs)(
        delayed(_search_chunk)(seed, start, stop, height) for start, stop in _chunks(trials, jobs)
    )
    report = SearchReport(trials, seed)
    for part in parts:
        report.merge(part)
    logging.info(f"subalgebra search: {trials} trials, {report.closed} subalgebras, counterexample={report.counterexample}")
    return report


@dataclass
class RefutationSweep:
    samples: int
    seed: int
    cases: Counter = field(default_factory=Counter)
    failures: list[tuple[Vector, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


REFUTATION_SHAPES = ("generic", "u1-free", "one-b-direction", "family-a")


def _sample_refutation_basis(rng: np.random.Generator, shape: str, height: int) -> list[MElement]:
    if shape == "u1-free":
        return [_random_element(rng, height, range(1, 6)) for _ in range(3)]
    if shape == "one-b-direction":
        b = _random_element(rng, height, (1, 3, 5))
        _, u2, _, u4, _, u6 = b.u
        if u2 != 0 and u4 != 0:
            b = MElement([0, u2, 4 * u2 * u2 / u4, u4, -u4 * u4 / (2 * u2), u6])
        return [b, _random_element(rng, height, (2, 4, 5)), _random_element(rng, height, (2, 4, 5))]
    if shape == "family-a":
        return [_random_element(rng, height, (2, 4, 5)) for _ in range(3)]
    return [_random_element(rng, height) for _ in range(3)]


def _refutation_chunk(seed: int, start: int, stop: int, height: int) -> RefutationSweep:
    part = RefutationSweep(stop - start, seed)
    for sample in range(start, stop):
        rng = np.random.default_rng([seed, sample])
        shape = REFUTATION_SHAPES[sample % len(REFUTATION_SHAPES)]
        basis = _sample_refutation_basis(rng, shape, height)
        while rank_of_vectors([e.u for e in basis]) < 3:
            basis = _sample_refutation_basis(rng, shape, height)
        try:
            part.cases[refute_rank2_3d_subspace(basis).case] += 1
        except RefutationError:
            part.failures.append(tuple(e.u for e in basis))
    return part


def refutation_sweep(samples: int, seed: int = 0, jobs: int = 1, height: int = 8) -> RefutationSweep:
    """
    Runs refute_rank2_3d_subspace on seeded random three-dimensional subspaces of m.
    """
    parts = Parallel(n_jobs=jobs)(
        delayed(_refutation_chunk)(seed, start, stop, height) for start, stop in _chunks(samples, jobs)
    )
    sweep = RefutationSweep(samples, seed)
    for part in parts:
        sweep.cases.update(part.cases)
        sweep.failures.extend(part.failures)
    logging.info(f"refutations: {samples} subspaces, {len(sweep.failures)} failures")
    return sweep


def _poly_vector(coefficients: Sequence[Sequence], n: int) -> PolyVector:
    """
    Linear symbolic vector alpha*c0 + beta*c1 + gamma*c2 from three coefficient vectors.
    """
    return tuple(HomCubicPoly3.linear(*(c[i] for c in coefficients)) for i in range(n))


def _constant_vector(v: Sequence, n: int) -> PolyVector:
    return tuple(HomCubicPoly3.constant(v[i]) for i in range(n))


def pencil_columns(Q: PolyMat) -> list[PolyVector]:
    return [poly_column(Q, j) for j in range(Q.cols)]


class ImageFormula:
    """
    A stated description of the image of Q = alpha*Q1 + beta*Q2 + gamma*Q3.
    """

    description = ""

    def verify(self, M: MetricLieAlgebra, elements: Sequence[Vector], Q: PolyMat) -> bool:
        raise NotImplementedError


class SpanImage(ImageFormula):
    """
    Every column of Q lies in the span of two symbolic vectors that are
    generically independent.
    """

    def __init__(self, first: PolyVector, second: PolyVector, description: str) -> None:
        self.first = first
        self.second = second
        self.description = description

    def verify(self, M: MetricLieAlgebra, elements: Sequence[Vector], Q: PolyMat) -> bool:
        pair = [(a, b) for a, b in zip(self.first, self.second)]
        if vanishing_minors(pair, 2):
            return False
        for column in pencil_columns(Q):
            stacked = [(a, b, c) for a, b, c in zip(self.first, self.second, column)]
            if not vanishing_minors(stacked, 3):
                return False
        return True


class OrthogonalIdealImage(ImageFormula):
    """
    For x = alpha*s1 + beta*s2 + gamma*s3, the image of ad(x) lies in x-perp intersected with an ideal.
    """

    def __init__(self, ideal: Subspace, description: str) -> None:
        self.ideal = ideal
        self.description = description

    def verify(self, M: MetricLieAlgebra, elements: Sequence[Vector], Q: PolyMat) -> bool:
        n = M.dim
        x = _poly_vector(elements, n)
        for column in pencil_columns(Q):
            for var in range(3):
                coefficient = tuple(p.coefficient(tuple(int(i == var) for i in range(3))) for p in column)
                if not self.ideal.contains(coefficient):
                    return False
            pairing = HomCubicPoly3.zero()
            for a in range(n):
                for b in range(n):
                    g = M.form[a, b]
                    if g and not x[a].is_zero() and not column[b].is_zero():
                        pairing = pairing + x[a] * column[b] * g
            if not pairing.is_zero():
                return False
        return True


@dataclass
class RankCertificate:
    minor_identities_checked: int
    all_zero: bool
    grid_min_rank: int
    grid_max_rank: int
    image_description: str = ""
    image_verified: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return self.all_zero and self.grid_min_rank == 2 and self.grid_max_rank == 2 and self.image_verified is not False


def constant_rank_two_certificate(
    Q1: Mat,
    Q2: Mat,
    Q3: Mat,
    image: ImageFormula | None = None,
    M: MetricLieAlgebra | None = None,
    elements: Sequence[Vector] = (),
    grid_bound: int = 3,
) -> RankCertificate:
    """
    All 3x3 minors of alpha*Q1 + beta*Q2 + gamma*Q3 vanish identically and
    the rank is 2 on the punctured grid; the image formula is checked when given.
    """
    if rank_of_vectors([Q.flatten() for Q in (Q1, Q2, Q3)]) != 3:
        raise ValueError("the three matrices must be linearly independent")
    Q = pencil([Q1, Q2, Q3])
    expanded = minors(Q, 3)
    all_zero = all(p.is_zero() for p in expanded)
    values = range(-grid_bound, grid_bound + 1)
    ranks = [
        rank(Q1.scale(a) + Q2.scale(b) + Q3.scale(c)) for a, b, c in itertools.product(values, repeat=3) if a or b or c
    ]
    certificate = RankCertificate(len(expanded), all_zero, min(ranks), max(ranks))
    if image is not None:
        certificate.image_description = image.description
        certificate.image_verified = image.verify(M, elements, Q)
    logging.debug(f"constant rank certificate: {certificate}")
    return certificate


def catalog_image_formula(entry: CatalogEntry) -> ImageFormula | None:
    """
    The stated image of Q for each non-abelian catalog completion, in the
    elements chosen by ``obstruction_elements``.
    """
    M = entry.value
    n = M.dim
    if entry.name == "nI":
        eps = entry.epsilon
        index = M.algebra.index
        z1 = [0] * n
        z1[index("z1")] = 1
        qa1 = [[0] * n for _ in range(3)]
        qa1[0][index("w2")] = -1
        qa1[1][index("w3")] = eps
        qa1[2][index("z2")] = 1
        return SpanImage(_constant_vector(z1, n), _poly_vector(qa1, n), "span of z1 and Q a1")
    if entry.name == "nII":
        return OrthogonalIdealImage(witt_decomposition(M).j, "im ad(x) = x-perp meet j")
    if entry.name == "nIII":
        eps = entry.epsilon
        index = M.algebra.index
        first = [[0] * n for _ in range(3)]
        first[0][index("w")] = 1
        first[2][index("z1")] = -eps
        second = [[0] * n for _ in range(3)]
        second[1][index("z1")] = eps
        second[0][index("z2")] = -eps
        return SpanImage(_poly_vector(first, n), _poly_vector(second, n), "span of alpha w - gamma eps z1 and beta eps z1 - alpha eps z2")
    return None


def _greedy_ad_basis(M: MetricLieAlgebra) -> list[Vector]:
    chosen: list[Vector] = []
    flats: list[Vector] = []
    for e in whole_space(M.dim).vectors:
        flat = ad_matrix(M.algebra, e).flatten()
        if rank_of_vectors(flats + [flat]) > len(flats):
            chosen.append(e)
            flats.append(flat)
    return chosen


def obstruction_elements(M: MetricLieAlgebra) -> tuple[str, list[Vector]]:
    """
    Elements whose ad-matrices span the three-dimensional test subspace:
    ad(n) itself when it is three-dimensional, otherwise ad(w).
    """
    if adjoint_image(M.algebra).dim == 3:
        return "ad(n)", _greedy_ad_basis(M)
    w = witt_decomposition(M).w
    if w.dim == 3 and adjoint_image(M.algebra, w).dim == 3:
        return "ad(w)", list(w.vectors)
    return "", []


class Conclusion(Enum):
    NOT_EMBEDDABLE = "NotEmbeddable"
    ABELIAN_NO_OBSTRUCTION = "AbelianNoObstruction"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ObstructionReport:
    algebra_name: str
    ad_image_dim: int
    conclusion: Conclusion
    test_elements: str = ""
    tested_subspace: Optional[Subspace] = None
    closed: bool = False
    constant_rank_certificate: Optional[RankCertificate] = None
    cites: str = ""
    notes: list[str] = field(default_factory=list)


def _is_matrix_subalgebra(matrices: Sequence[Mat], span: Subspace) -> bool:
    return all(span.contains(A.commutator(B).flatten()) for A, B in itertools.combinations(matrices, 2))


def embedding_obstruction(M: MetricLieAlgebra, name: str = "", image: ImageFormula | None = None) -> ObstructionReport:
    ad_dim = adjoint_image(M.algebra).dim
    report = ObstructionReport(name, ad_dim, Conclusion.INCONCLUSIVE)
    if M.dim != 7 or M.index != 3:
        report.notes.append(f"needs dimension 7 and index 3, got {M.dim} and {M.signature}")
        return report
    if nilpotency_class(M.algebra) is None:
        report.notes.append("algebra is not nilpotent")
        return report
    if is_abelian(M.algebra):
        report.conclusion = Conclusion.ABELIAN_NO_OBSTRUCTION
        return report
    label, elements = obstruction_elements(M)
    if not elements:
        report.notes.append("no three-dimensional ad-subspace of the expected shape")
        return report
    matrices = [ad_matrix(M.algebra, e) for e in elements]
    span = rref_subspace((A.flatten() for A in matrices), M.dim * M.dim)
    report.test_elements = label
    report.tested_subspace = span
    report.closed = _is_matrix_subalgebra(matrices, span)
    certificate = constant_rank_two_certificate(*matrices, image=image, M=M, elements=elements)
    report.constant_rank_certificate = certificate
    if report.closed and certificate.holds and span.dim == 3:
        report.conclusion = Conclusion.NOT_EMBEDDABLE
        report.cites = NO_RANK_TWO_SUBALGEBRA
    else:
        report.notes.append("test subspace fails the constant rank two profile")
    return report


def obstruct_entry(entry: CatalogEntry) -> ObstructionReport:
    return embedding_obstruction(entry.value, entry.label, catalog_image_formula(entry))


@dataclass
class TwoStepReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    precondition_failed: str = ""

    @property
    def passed(self) -> bool:
        return not self.precondition_failed and all(ok for _, ok, _ in self.checks)


def two_step_lemma_check(M: MetricLieAlgebra) -> TwoStepReport:
    """
    A seven-dimensional two-step nilpotent metric algebra of index three has
    a three-dimensional j, ad(n) = ad(jstar) of dimension three and constant
    rank two on jstar.
    """
    report = TwoStepReport()
    steps = nilpotency_class(M.algebra)
    if M.dim != 7 or M.index != 3 or steps != 2:
        report.precondition_failed = f"needs a 7-dimensional two-step algebra of index 3, got dimension {M.dim}, class {steps}, signature {M.signature}"
        return report
    witt = witt_decomposition(M)
    ad_dim = adjoint_image(M.algebra).dim
    report.checks.append(("dim j = 3", witt.j.dim == 3, f"dim j = {witt.j.dim}"))
    report.checks.append(("dim jstar = 3", witt.jstar.dim == 3, f"dim jstar = {witt.jstar.dim}"))
    report.checks.append(("dim ad(n) = 3", ad_dim == 3, f"dim ad(n) = {ad_dim}"))
    derived = derived_algebra(M.algebra)
    report.checks.append(("[n, n] = j", derived == witt.j, f"dim [n, n] = {derived.dim}"))
    if witt.jstar.dim == 3:
        elements = list(witt.jstar_basis)
        matrices = [ad_matrix(M.algebra, e) for e in elements]
        certificate = constant_rank_two_certificate(
            *matrices, image=OrthogonalIdealImage(witt.j, "im ad(x) = x-perp meet j"), M=M, elements=elements
        )
        report.checks.append(("constant rank two on ad(jstar)", certificate.holds, f"{certificate.minor_identities_checked} minors"))
    return report
