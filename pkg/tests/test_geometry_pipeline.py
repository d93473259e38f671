import itertools

from fractions import Fraction

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from g2check.modules.catalog import make_abelian, make_nI, seven_dim_candidates
from g2check.modules.exact_linalg import Mat, rank
from g2check.modules.geometry_pipeline import (
    FLAT_TORUS,
    FormStatus,
    check_curvature_identities,
    curvature,
    form_space_determinant_vanishes,
    geometry_report,
    holonomy_algebra,
    nondegenerate_invariant_form,
    ricci,
    verify_lowdim_abelian_lemma,
    verify_main_theorem,
)
from g2check.modules.lie_algebra import (
    LieAlgebra,
    MetricLieAlgebra,
    is_abelian,
    isotropic_ideal_j,
    killing_form,
    nilpotency_class,
)


def candidate(label: str):
    return next(entry for entry in seven_dim_candidates() if entry.label == label)


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_relations(("x", "y", "z"), {("x", "y"): {"z": 1}})


def test_curvature() -> None:
    M = make_nI(1)
    a1, a2 = M.algebra.basis_vector("a1"), M.algebra.basis_vector("a2")
    w2 = M.algebra.basis_vector("w2")
    assert curvature(M, a1, a2, a1) == tuple(-Fraction(1, 4) * c for c in w2)
    assert curvature(M, a2, a1, a1) == tuple(Fraction(1, 4) * c for c in w2)


def test_ricci_is_quarter_killing() -> None:
    solvable = LieAlgebra.from_relations(("e1", "e2"), {("e1", "e2"): {"e2": 1}})
    M = MetricLieAlgebra(solvable, Mat.identity(2), validate=False)
    assert ricci(M) == killing_form(solvable).scale(Fraction(1, 4))
    assert ricci(M)[0, 0] == Fraction(1, 4)


@pytest.mark.parametrize(
    "label, holonomy",
    [("nI(+1)", 3), ("nI(-1)", 3), ("nII+R", 0), ("nIII(+1)+R2", 1), ("nIII(-1)+R2", 1), ("abelian", 0)],
)
def test_catalog_geometry(label: str, holonomy: int) -> None:
    M = candidate(label).value
    report = geometry_report(M)
    assert report.ricci.is_zero()
    assert report.ricci_is_quarter_killing
    assert report.holonomy_dim == holonomy
    assert holonomy_algebra(M).dim == holonomy


def test_flatness() -> None:
    assert geometry_report(make_abelian(4, 3)).is_flat
    assert not geometry_report(make_nI(1)).is_flat


def cotangent_extension(L: LieAlgebra) -> MetricLieAlgebra:
    """
    L + L* with the coadjoint action on L* and the dual pairing as form.
    """
    n = L.dim
    labels = L.basis_labels + tuple(f"{x}_dual" for x in L.basis_labels)
    table = {(i, j): L.bracket_basis(i, j) + (0,) * n for i, j in itertools.combinations(range(n), 2)}
    for i in range(n):
        for k in range(n):
            # [e_i, f_k] = -sum_j c_ij^k f_j
            table[(i, n + k)] = (0,) * n + tuple(-L.bracket_basis(i, j)[k] for j in range(n))
    form = [[1 if abs(a - b) == n else 0 for b in range(2 * n)] for a in range(2 * n)]
    return MetricLieAlgebra(LieAlgebra(labels, table), form)


@st.composite
def two_step_algebras(draw) -> LieAlgebra:
    p = draw(st.integers(2, 3))
    r = draw(st.integers(1, 2))
    table = {}
    for i, j in itertools.combinations(range(p), 2):
        table[(i, j)] = [0] * p + draw(st.lists(st.integers(-2, 2), min_size=r, max_size=r))
    return LieAlgebra(tuple(f"v{i + 1}" for i in range(p)) + tuple(f"z{k + 1}" for k in range(r)), table)


@given(two_step_algebras())
@settings(max_examples=25, deadline=None)
def test_ricci_flat_on_metric_nilpotent_algebras(L: LieAlgebra) -> None:
    M = cotangent_extension(L)
    assert M.signature == (L.dim, L.dim)
    assert nilpotency_class(M.algebra) is not None
    report = geometry_report(M)
    assert report.ricci_is_quarter_killing
    assert report.ricci.is_zero() and report.killing.is_zero()
    assert (isotropic_ideal_j(M).dim == 0) == is_abelian(M.algebra)
    # L + L* is again two-step, so the metric is flat
    assert report.is_flat and report.holonomy_dim == 0


@given(st.integers(-3, 3).filter(bool))
@settings(max_examples=10, deadline=None)
def test_ricci_is_quarter_killing_off_the_nilpotent_case(t: int) -> None:
    solvable = LieAlgebra.from_relations(("a", "b"), {("a", "b"): {"b": t}})
    M = cotangent_extension(solvable)
    assert ricci(M) == killing_form(M.algebra).scale(Fraction(1, 4))
    # ad(a) scales b by t and b_dual by -t
    assert ricci(M)[0, 0] == Fraction(t * t, 2)


def test_curvature_identities() -> None:
    for label in ("nI(+1)", "nIII(-1)+R2"):
        found = check_curvature_identities(candidate(label).value, samples=50, seed=2)
        assert found.passed
        assert found.samples == 50


def test_nondegenerate_invariant_form() -> None:
    assert nondegenerate_invariant_form(heisenberg()).status is FormStatus.DEGENERATE
    found = nondegenerate_invariant_form(LieAlgebra(("e1", "e2", "e3")))
    assert found.status is FormStatus.FOUND
    assert rank(found.form) == 3
    assert found.points_tried >= 1


def test_nondegenerate_form_off_the_coordinate_points() -> None:
    # on R^2 every form is [[a, b], [b, c]] with determinant ac - b^2
    plane = LieAlgebra(("e1", "e2"))
    found = nondegenerate_invariant_form(plane, seed=4)
    assert found.status is FormStatus.FOUND
    assert rank(found.form) == 2
    assert nondegenerate_invariant_form(plane, seed=4).form == found.form


def test_form_space_determinant() -> None:
    assert form_space_determinant_vanishes(heisenberg()) is True
    assert form_space_determinant_vanishes(LieAlgebra(("e1", "e2", "e3"))) is False
    assert form_space_determinant_vanishes(LieAlgebra(("e1", "e2", "e3", "e4"))) is False
    assert form_space_determinant_vanishes(LieAlgebra(tuple(f"e{i}" for i in range(1, 6)))) is None


def test_lowdim_sampled() -> None:
    found = verify_lowdim_abelian_lemma(4, samples=200, seed=5)
    assert found.passed
    assert found.inconclusive == 0
    assert found.candidates == 200
    assert found.survivors == found.metric
    assert found.metric + found.certified_degenerate == found.nilpotent
    with pytest.raises(ValueError):
        verify_lowdim_abelian_lemma(5)


def test_main_theorem() -> None:
    verdict = verify_main_theorem()
    assert verdict.passed
    assert verdict.conclusion == FLAT_TORUS
    assert [entry.label for entry in verdict.surviving_cases] == ["abelian"]
    assert len(verdict.cases) == 6
    assert len(verdict.assumed) == 4
