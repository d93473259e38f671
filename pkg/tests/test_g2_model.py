from fractions import Fraction

import pytest

from g2check.modules.exact_linalg import Mat, signature
from g2check.modules.g2_model import (
    MElement,
    ThreeForm,
    annihilates,
    family_a,
    family_b,
    g2_generators,
    g2_three_form,
    g2_to_matrix,
    generator_span,
    invariant_bilinear_form,
    invariant_three_forms,
    is_skew,
    m_generators,
    m_nilpotency_class,
    m_structure,
    m_to_matrix,
    membership_in_g2,
    membership_in_m,
    stabilizer_in_gl,
    structure_constants_of_g2,
)
from g2check.modules.lie_algebra import jacobi_defect, killing_form, lower_central_series

ANTIDIAGONAL = Mat([[1 if i + j == 6 else 0 for j in range(7)] for i in range(7)])


def test_model_closes() -> None:
    algebra = structure_constants_of_g2()
    assert algebra.dim == 14
    assert jacobi_defect(algebra) == 0
    assert signature(killing_form(algebra)) == (8, 6, 0)


def test_invariant_bilinear_form() -> None:
    S = invariant_bilinear_form()
    assert S == ANTIDIAGONAL
    assert signature(S) == (4, 3, 0)
    assert all(is_skew(A, S) for A in g2_generators())
    assert not is_skew(Mat.identity(7), S)


def test_corrected_entry() -> None:
    # u10 sits at (1, 3), (2, 4), (4, 6) and (5, 7)
    A = g2_to_matrix([0] * 9 + [1] + [0] * 4)
    assert A[0, 2] == 1 and A[4, 6] == -1
    assert A[1, 3] == Fraction(1, 2) and A[3, 5] == Fraction(-1, 2)


def test_membership() -> None:
    u = [1, -2, 3, 0, Fraction(1, 2), 4, 7, 0, -1, 2, 0, 0, 5, 1]
    found = membership_in_g2(g2_to_matrix(u))
    assert found is not None and found.u == tuple(Fraction(x) for x in u)
    assert membership_in_g2(Mat.identity(7)) is None
    assert membership_in_m(g2_to_matrix([0] * 6 + [1] + [0] * 7)) is None
    assert membership_in_m(m_to_matrix(family_a(1, 2, 3))) == family_a(1, 2, 3)


def test_m_is_strictly_lower_triangular() -> None:
    assert all(A.is_strictly_lower_triangular() for A in m_generators())
    assert not any(A.is_strictly_lower_triangular() for A in g2_generators()[6:])


def test_m_brackets() -> None:
    m = m_structure()
    assert m.bracket_basis(0, 1) == (0, 0, 0, -8, 0, 0)
    assert m.bracket_basis(0, 2) == (0, -1, 0, 0, 0, 0)
    assert m.bracket_basis(0, 3) == (0, 0, 0, 0, 6, 0)
    assert m.bracket_basis(1, 3) == (0, 0, 0, 0, 0, -6)
    assert m.bracket_basis(2, 4) == (0, 0, 0, 0, 0, -1)
    assert m.bracket_basis(1, 2) == (0, 0, 0, 0, 0, 0)


def test_m_lower_central_series() -> None:
    assert [S.dim for S in lower_central_series(m_structure())] == [6, 4, 3, 2, 1, 0]
    assert m_nilpotency_class() == 5


def test_families() -> None:
    assert family_b(1, 2, 0).u == (0, 1, 2, 2, -2, 0)
    assert -family_b(1, 2, 0) == family_b(-1, -2, 0)
    assert 2 * family_a(1, 0, 0) == family_a(2, 0, 0)
    assert (family_a(1, 2, 3) - family_a(1, 2, 3)).is_zero()
    with pytest.raises(ValueError):
        family_b(0, 1, 1)
    with pytest.raises(ValueError):
        MElement([1, 2])


def test_three_form_signs() -> None:
    phi = ThreeForm.decomposable(2, 1, 0)
    assert phi.value(0, 1, 2) == -1
    assert phi.value(1, 0, 2) == 1
    assert phi.value(0, 0, 2) == 0
    assert ThreeForm.decomposable(1, 1, 2).is_zero()


def test_invariant_three_form() -> None:
    assert invariant_three_forms().dim == 1
    phi = g2_three_form()
    assert all(annihilates(A, phi) for A in g2_generators())
    assert not annihilates(Mat.identity(7), phi)


def test_stabilizers() -> None:
    stabilizer = stabilizer_in_gl(g2_three_form())
    assert stabilizer.dim == 14
    assert stabilizer == generator_span()
    assert stabilizer_in_gl(ThreeForm.decomposable(0, 1, 2)).dim == 36
    with pytest.raises(ValueError):
        stabilizer_in_gl(ThreeForm([0] * 35))
