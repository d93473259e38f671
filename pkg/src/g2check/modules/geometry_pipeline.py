"""
Curvature, Ricci tensor and holonomy of bi-invariant metrics, computed on
the Lie algebra, and the case analysis that leaves the flat torus as the
only seven-dimensional nilpotent candidate of index three.
"""
from __future__ import annotations

import itertools
import logging

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy as sp

from joblib import Parallel, delayed

from .catalog import CatalogEntry, seven_dim_candidates
from .exact_linalg import (
    Mat,
    Scalar,
    Subspace,
    Vector,
    rank,
    unit_vector,
    vector,
)
from .lie_algebra import (
    LieAlgebra,
    MetricLieAlgebra,
    adjoint_image,
    bracket,
    derived_algebra,
    invariant_forms_common_radical,
    invariant_symmetric_forms,
    is_abelian,
    jacobi_defect,
    killing_form,
    nilpotency_class,
    symmetric_form,
)
from .rank_obstruction import Conclusion, ObstructionReport, obstruct_entry

FLAT_TORUS = "flat torus"
INCONCLUSIVE = "inconclusive"

ASSUMED_REDUCTIONS = (
    "a compact quotient with a torsion-free invariant structure lifts to a bi-invariant metric on a Lie group",
    "the holonomy of the quotient is generated by Ad of the commutator subgroup",
    "a nilpotent subalgebra of g2(2) is conjugate into the maximal strictly triangular subalgebra m",
    "the seven-dimensional nilpotent metric Lie algebras of index three are the catalog entries up to isomorphism",
)


def curvature(M: MetricLieAlgebra, x: Sequence[Scalar], y: Sequence[Scalar], z: Sequence[Scalar]) -> Vector:
    """
    R(x, y)z = 1/4 [[x, y], z].
    """
    L = M.algebra
    return tuple(c / 4 for c in bracket(L, bracket(L, x, y), z))


def ricci(M: MetricLieAlgebra) -> Mat:
    """
    Ric(y, z) = trace of x -> R(x, y)z.
    """
    n = M.dim
    basis = [unit_vector(n, i) for i in range(n)]
    return Mat(
        ((sum((curvature(M, basis[i], y, z)[i] for i in range(n)), Fraction(0)) for z in basis) for y in basis),
        cols=n,
    )


def holonomy_algebra(M: MetricLieAlgebra) -> Subspace:
    """
    span{ad(v) : v in [n, n]}, flattened row-major.
    """
    return adjoint_image(M.algebra, derived_algebra(M.algebra))


def curvature_vanishes(M: MetricLieAlgebra) -> bool:
    n = M.dim
    basis = [unit_vector(n, i) for i in range(n)]
    return all(not any(curvature(M, x, y, z)) for x, y, z in itertools.product(basis, repeat=3))


@dataclass
class GeometryReport:
    ricci: Mat
    killing: Mat
    holonomy_dim: int
    holonomy_basis: Subspace
    is_flat: bool
    ricci_is_quarter_killing: bool


def geometry_report(M: MetricLieAlgebra) -> GeometryReport:
    ric = ricci(M)
    killing = killing_form(M.algebra)
    holonomy = holonomy_algebra(M)
    flat = curvature_vanishes(M)
    if flat != (holonomy.dim == 0):
        logging.warning("flatness and holonomy dimension disagree")
    return GeometryReport(ric, killing, holonomy.dim, holonomy, flat and holonomy.dim == 0, ric == killing.scale(Fraction(1, 4)))


@dataclass
class CurvatureIdentityReport:
    samples: int
    antisymmetry_failures: int = 0
    bianchi_failures: int = 0
    compatibility_failures: int = 0

    @property
    def passed(self) -> bool:
        return self.antisymmetry_failures == 0 and self.bianchi_failures == 0 and self.compatibility_failures == 0


def check_curvature_identities(M: MetricLieAlgebra, samples: int = 1000, seed: int = 0, height: int = 5) -> CurvatureIdentityReport:
    """
    Antisymmetry, first Bianchi identity and metric compatibility on random integer vectors.
    """
    report = CurvatureIdentityReport(samples)
    n = M.dim
    for sample in range(samples):
        rng = np.random.default_rng([seed, sample])
        x, y, z, v = (vector(int(c) for c in rng.integers(-height, height + 1, size=n)) for _ in range(4))
        rxy = curvature(M, x, y, z)
        if rxy != tuple(-c for c in curvature(M, y, x, z)):
            report.antisymmetry_failures += 1
        cyclic = zip(rxy, curvature(M, y, z, x), curvature(M, z, x, y))
        if any(a + b + c for a, b, c in cyclic):
            report.bianchi_failures += 1
        if M.inner(rxy, v) + M.inner(z, curvature(M, x, y, v)) != 0:
            report.compatibility_failures += 1
    return report


def _forms_matrix(n: int, basis_forms: Sequence[Vector], coefficients: Sequence[int]) -> Mat:
    total = [Fraction(0)] * len(basis_forms[0])
    for c, form in zip(coefficients, basis_forms):
        if c:
            total = [a + c * b for a, b in zip(total, form)]
    return symmetric_form(n, total)


class FormStatus(Enum):
    FOUND = "found"
    DEGENERATE = "certified degenerate"
    INCONCLUSIVE = "inconclusive"


@dataclass
class FormSearch:
    status: FormStatus
    form: Optional[Mat] = None
    points_tried: int = 0


def nondegenerate_invariant_form(L: LieAlgebra, attempts: int = 64, seed: int = 0) -> FormSearch:
    """
    Looks for an invariant form of full rank in the solution space. Unit
    vectors and the all-ones vector go first, then seeded random integer
    points; when none is nondegenerate the generic determinant decides
    between certified degenerate and inconclusive.
    """
    space = invariant_symmetric_forms(L)
    if space.dim == 0 or invariant_forms_common_radical(L).dim > 0:
        return FormSearch(FormStatus.DEGENERATE)
    forms = space.vectors
    candidates = [unit_vector(len(forms), i) for i in range(len(forms))]
    candidates.append(tuple(1 for _ in forms))
    # a nonzero determinant of degree dim vanishes at a uniform point of
    # [-b, b]^d with probability at most dim / (2b + 1)
    bound = 10 * L.dim
    rng = np.random.default_rng([seed, L.dim, len(forms)])
    candidates.extend(tuple(int(c) for c in rng.integers(-bound, bound + 1, size=len(forms))) for _ in range(attempts))
    for tried, coefficients in enumerate(candidates, 1):
        S = _forms_matrix(L.dim, forms, coefficients)
        if rank(S) == L.dim:
            return FormSearch(FormStatus.FOUND, S, tried)
    if form_space_determinant_vanishes(L):
        return FormSearch(FormStatus.DEGENERATE, points_tried=len(candidates))
    logging.warning(f"no nondegenerate form found in {len(candidates)} points of a {len(forms)}-dimensional form space")
    return FormSearch(FormStatus.INCONCLUSIVE, points_tried=len(candidates))


def form_space_determinant_vanishes(L: LieAlgebra, max_dim: int = 4) -> bool | None:
    """
    Symbolic check that det(c1*S1 + ... + cd*Sd) over a basis of the invariant
    forms is identically zero; None above ``max_dim``.
    """
    space = invariant_symmetric_forms(L)
    if space.dim == 0:
        return True
    if L.dim > max_dim:
        return None
    coefficients = sp.symbols(f"c0:{space.dim}")
    generic = sp.zeros(L.dim, L.dim)
    for c, v in zip(coefficients, space.vectors):
        generic += c * symmetric_form(L.dim, v).to_sympy()
    return sp.expand(generic.det(method="berkowitz")) == 0


@dataclass
class LowDimReport:
    dim: int
    coeff_bound: int
    candidates: int = 0
    lie: int = 0
    nilpotent: int = 0
    metric: int = 0
    certified_degenerate: int = 0
    inconclusive: int = 0
    survivors: int = 0
    nonabelian_survivors: list[LieAlgebra] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.nonabelian_survivors and not self.inconclusive


def _structure_tables(dim: int, coeff_bound: int, samples: int, seed: int):
    pairs = list(itertools.combinations(range(dim), 2))
    values = range(-coeff_bound, coeff_bound + 1)
    if dim == 3:
        for flat in itertools.product(values, repeat=len(pairs) * dim):
            yield {pair: flat[k * dim:(k + 1) * dim] for k, pair in enumerate(pairs)}
        return
    for sample in range(samples):
        rng = np.random.default_rng([seed, sample])
        table = {}
        triangular = sample % 2 == 0
        for i, j in pairs:
            coords = [int(c) for c in rng.integers(-coeff_bound, coeff_bound + 1, size=dim)]
            coords = [c if rng.random() < 0.4 else 0 for c in coords]
            if triangular:
                coords = [c if k > j else 0 for k, c in enumerate(coords)]
            table[(i, j)] = coords
        yield table


def verify_lowdim_abelian_lemma(dim: int, coeff_bound: int = 1, samples: int = 10000, seed: int = 0) -> LowDimReport:
    """
    Every nilpotent Lie algebra of dimension 3 or 4 with a nondegenerate
    invariant form is abelian. Dimension 3 is enumerated exhaustively,
    dimension 4 is sampled.
    """
    if dim not in (3, 4):
        raise ValueError("the low-dimensional check covers dimensions 3 and 4")
    report = LowDimReport(dim, coeff_bound)
    labels = tuple(f"e{i + 1}" for i in range(dim))
    for table in _structure_tables(dim, coeff_bound, samples, seed):
        report.candidates += 1
        L = LieAlgebra(labels, table, validate=False)
        if jacobi_defect(L) != 0:
            continue
        report.lie += 1
        if nilpotency_class(L) is None:
            continue
        report.nilpotent += 1
        search = nondegenerate_invariant_form(L, seed=seed)
        if search.status is FormStatus.DEGENERATE:
            report.certified_degenerate += 1
            continue
        if search.status is FormStatus.INCONCLUSIVE:
            report.inconclusive += 1
            continue
        report.metric += 1
        report.survivors += 1
        if not is_abelian(L):
            report.nonabelian_survivors.append(L)
    logging.info(f"dimension {dim}: {report.candidates} tables, {report.metric} metric nilpotent, {report.inconclusive} inconclusive, {len(report.nonabelian_survivors)} non-abelian")
    return report


@dataclass
class CaseOutcome:
    entry: CatalogEntry
    obstruction: ObstructionReport
    geometry: Optional[GeometryReport] = None


@dataclass
class TheoremVerdict:
    cases: list[CaseOutcome]
    surviving_cases: list[CatalogEntry]
    conclusion: str
    assumed: tuple[str, ...] = ASSUMED_REDUCTIONS

    @property
    def passed(self) -> bool:
        return self.conclusion == FLAT_TORUS


def _evaluate_case(entry: CatalogEntry) -> CaseOutcome:
    outcome = CaseOutcome(entry, obstruct_entry(entry))
    if outcome.obstruction.conclusion is not Conclusion.NOT_EMBEDDABLE:
        outcome.geometry = geometry_report(entry.value)
    return outcome


def verify_main_theorem(jobs: int = 1) -> TheoremVerdict:
    """
    Runs the obstruction on every catalog candidate; the cases left over
    must be abelian, flat and of index three.
    """
    cases = Parallel(n_jobs=jobs)(delayed(_evaluate_case)(entry) for entry in seven_dim_candidates())
    surviving = [case.entry for case in cases if case.obstruction.conclusion is not Conclusion.NOT_EMBEDDABLE]
    conclusion = INCONCLUSIVE
    if len(surviving) == 1 and surviving[0].is_abelian:
        survivor = next(case for case in cases if case.entry is surviving[0])
        geometry = survivor.geometry
        if (
            survivor.obstruction.conclusion is Conclusion.ABELIAN_NO_OBSTRUCTION
            and geometry is not None
            and geometry.is_flat
            and geometry.holonomy_dim == 0
            and survivor.entry.value.signature == (4, 3)
        ):
            conclusion = FLAT_TORUS
    logging.info(f"case analysis: {len(cases) - len(surviving)} obstructed, survivors {[e.label for e in surviving]}, conclusion {conclusion}")
    return TheoremVerdict(cases, surviving, conclusion)
