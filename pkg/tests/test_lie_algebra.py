
import pytest

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from g2check.modules.catalog import make_abelian, make_nI, make_nII, make_nIII, seven_dim_candidates
from g2check.modules.exact_linalg import (
    DegenerateFormError,
    Mat,
    NonSymmetricError,
    rref_subspace,
    signature,
    unit_vector,
)
from g2check.modules.lie_algebra import (
    InvarianceError,
    JacobiError,
    LieAlgebra,
    MetricLieAlgebra,
    adjoint_image,
    bracket,
    center,
    derived_algebra,
    direct_sum,
    invariance_witness,
    invariant_forms_common_radical,
    invariant_symmetric_forms,
    is_ideal,
    is_totally_isotropic,
    isotropic_ideal_j,
    jacobi_defect,
    jacobi_witness,
    killing_form,
    lower_central_series,
    nilpotency_class,
    orthogonal_complement,
    orthogonal_direct_sum,
    symmetric_form,
    symmetric_form_coordinates,
    witt_decomposition,
)

NII_LABELS = ("a1", "a2", "a3", "z1", "z2", "z3")
HYPERBOLIC_6 = [[1 if abs(i - j) == 3 else 0 for j in range(6)] for i in range(6)]


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_relations(("x", "y", "z"), {("x", "y"): {"z": 1}})


def test_reversed_relation_is_negated() -> None:
    L = LieAlgebra.from_relations(("a", "b", "c"), {("b", "a"): {"c": 1}})
    assert L.bracket_basis(0, 1) == (0, 0, -1)
    assert L.bracket_basis(1, 0) == (0, 0, 1)
    with pytest.raises(ValueError):
        LieAlgebra.from_relations(("a", "b"), {("a", "a"): {"b": 1}})
    with pytest.raises(ValueError):
        LieAlgebra(("a", "b"), {(1, 0): (1, 0)})


def test_bracket_is_bilinear() -> None:
    L = heisenberg()
    assert bracket(L, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert bracket(L, (2, 1, 5), (3, -1, 7)) == (0, 0, -5)


def test_jacobi_failure_names_triple() -> None:
    relations = {
        ("a1", "a2"): {"z3": 1},
        ("a2", "a3"): {"z1": 1},
        ("a3", "a1"): {"z2": 1},
        ("a1", "z1"): {"z2": 1},
    }
    broken = LieAlgebra.from_relations(NII_LABELS, relations, validate=False)
    assert jacobi_defect(broken) == 1
    triple, jacobiator = jacobi_witness(broken)
    assert triple == ("a1", "a2", "a3")
    assert jacobiator == (0, 0, 0, 0, -1, 0)
    with pytest.raises(JacobiError) as err:
        LieAlgebra.from_relations(NII_LABELS, relations)
    assert err.value.witness == ("a1", "a2", "a3")


def test_lower_central_series() -> None:
    assert nilpotency_class(heisenberg()) == 2
    assert nilpotency_class(LieAlgebra(("e1", "e2", "e3"))) == 1
    solvable = LieAlgebra.from_relations(("e1", "e2"), {("e1", "e2"): {"e2": 1}})
    assert nilpotency_class(solvable) is None
    assert [S.dim for S in lower_central_series(solvable)] == [2, 1]
    assert killing_form(solvable)[0, 0] == 1


def test_catalog_series() -> None:
    assert [S.dim for S in lower_central_series(make_nI(1).algebra)] == [7, 5, 4, 3, 2, 0]
    assert nilpotency_class(make_nII().algebra) == 2
    assert [S.dim for S in lower_central_series(make_nIII(1).algebra)] == [5, 3, 2, 0]


def test_center_and_derived() -> None:
    L = heisenberg()
    z = rref_subspace([[0, 0, 1]], 3)
    assert center(L) == z
    assert derived_algebra(L) == z
    assert is_ideal(L, z)
    assert not is_ideal(L, rref_subspace([[1, 0, 0]], 3))
    nII = make_nII().algebra
    assert center(nII) == derived_algebra(nII)
    assert center(nII).dim == 3


def test_killing_form_of_nilpotent_algebra_vanishes() -> None:
    assert killing_form(make_nI(1).algebra).is_zero()
    assert killing_form(make_nIII(-1).algebra).is_zero()


def test_invariant_forms() -> None:
    L = heisenberg()
    assert invariant_symmetric_forms(L).dim == 3
    assert (0, 0, 1) in invariant_forms_common_radical(L)
    assert invariant_symmetric_forms(LieAlgebra(("e1", "e2", "e3"))).dim == 6
    for coordinates in invariant_symmetric_forms(make_nII().algebra).vectors:
        assert invariance_witness(make_nII().algebra, symmetric_form(6, coordinates)) is None


@given(st.lists(st.integers(-4, 4), min_size=10, max_size=10))
@settings(max_examples=30, deadline=None)
def test_symmetric_form_coordinates(coordinates) -> None:
    S = symmetric_form(4, coordinates)
    assert S.is_symmetric()
    assert symmetric_form_coordinates(S) == tuple(coordinates)


def test_metric_validation_order() -> None:
    nII = make_nII().algebra
    with pytest.raises(NonSymmetricError):
        MetricLieAlgebra(nII, [[1 if j == i + 3 else 0 for j in range(6)] for i in range(6)])
    with pytest.raises(DegenerateFormError):
        MetricLieAlgebra(nII, Mat.zeros(6, 6))
    partial = LieAlgebra.from_relations(NII_LABELS, {("a1", "a2"): {"z3": 1}})
    with pytest.raises(InvarianceError) as err:
        MetricLieAlgebra(partial, HYPERBOLIC_6)
    assert err.value.witness == ("a1", "a2", "a3")
    assert err.value.residual == 1


def test_signatures() -> None:
    assert make_nI(1).signature == (4, 3)
    assert make_nI(-1).signature == (3, 4)
    assert make_nII().signature == (3, 3)
    assert make_nIII(1).signature == (3, 2)
    assert make_nI(-1).flipped().signature == (4, 3)
    assert make_nII().index == 3


def test_witt_decomposition_nI() -> None:
    M = make_nI(1)
    witt = witt_decomposition(M)
    labels = M.basis_labels
    span = lambda *names: rref_subspace([unit_vector(7, labels.index(x)) for x in names], 7)
    assert witt.j == span("z1", "z2")
    assert witt.jstar == span("a1", "a2")
    assert witt.w == span("w1", "w2", "w3")
    assert witt.pairing == Mat.identity(2)
    assert is_totally_isotropic(M, witt.jstar)


def test_witt_decomposition_dimensions() -> None:
    nII = witt_decomposition(make_nII())
    assert (nII.jstar.dim, nII.w.dim, nII.j.dim) == (3, 0, 3)
    nIII = witt_decomposition(make_nIII(-1))
    assert (nIII.jstar.dim, nIII.w.dim, nIII.j.dim) == (2, 1, 2)
    M = make_nIII(1)
    assert orthogonal_complement(M, nIII.w) == rref_subspace(nIII.jstar.vectors + nIII.j.vectors, 5)


def test_direct_sum_renames_labels() -> None:
    L = direct_sum(heisenberg(), heisenberg())
    assert L.basis_labels == ("x", "y", "z", "x_2", "y_2", "z_2")
    assert nilpotency_class(L) == 2
    assert center(L).dim == 2


def test_adjoint_image() -> None:
    assert adjoint_image(heisenberg()).dim == 2
    assert adjoint_image(make_nII().algebra, derived_algebra(make_nII().algebra)).dim == 0
    assert adjoint_image(make_nI(1).algebra, derived_algebra(make_nI(1).algebra)).dim == 3
    assert adjoint_image(LieAlgebra(("e",))).dim == 0


@pytest.mark.parametrize("entry", seven_dim_candidates(), ids=lambda entry: entry.label)
def test_isotropic_ideal_vanishes_only_on_abelian(entry) -> None:
    j = isotropic_ideal_j(entry.value)
    assert (j.dim == 0) == entry.is_abelian
    assert is_totally_isotropic(entry.value, j)


@pytest.mark.parametrize(
    "M, w_signature",
    [(make_nI(1), (2, 1, 0)), (make_nI(-1), (1, 2, 0)), (make_nIII(1), (1, 0, 0)), (make_nIII(-1), (0, 1, 0))],
    ids=["nI(+1)", "nI(-1)", "nIII(+1)", "nIII(-1)"],
)
def test_witt_complement_signature(M, w_signature) -> None:
    witt = witt_decomposition(M)
    p, q = M.signature
    assert signature(M.form.gram(witt.w.vectors)) == w_signature
    assert w_signature[:2] == (p - witt.j.dim, q - witt.j.dim)


@pytest.mark.parametrize("entry", seven_dim_candidates(), ids=lambda entry: entry.label)
def test_witt_complement_signature_on_candidates(entry) -> None:
    M = entry.value
    witt = witt_decomposition(M)
    if witt.w.dim:
        p, q, _ = signature(M.form.gram(witt.w.vectors))
        assert (p, q) == (M.signature[0] - witt.j.dim, M.signature[1] - witt.j.dim)
    else:
        assert M.signature == (witt.j.dim, witt.j.dim)


def test_orthogonal_direct_sum() -> None:
    M = orthogonal_direct_sum(make_nIII(1), make_abelian(1, 1, prefix="t"))
    assert M.dim == 7
    assert M.basis_labels == ("a1", "a2", "w", "z1", "z2", "t1", "t2")
    assert M.signature == (4, 3)
    assert nilpotency_class(M.algebra) == nilpotency_class(make_nIII(1).algebra)
    assert center(M.algebra).dim == center(make_nIII(1).algebra).dim + 2


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_orthogonal_direct_sum_adds_signatures(p1, q1, p2, q2) -> None:
    assume(p1 + q1 > 0 and p2 + q2 > 0)
    M = orthogonal_direct_sum(make_abelian(p1, q1), make_abelian(p2, q2, prefix="f"))
    assert M.signature == (p1 + p2, q1 + q2)
    assert M.dim == p1 + q1 + p2 + q2
    padded = orthogonal_direct_sum(make_nII(), make_abelian(p2 + 1, q2, prefix="f"))
    assert padded.signature == (3 + p2 + 1, 3 + q2)
