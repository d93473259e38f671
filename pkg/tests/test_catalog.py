import pytest

from g2check.modules.catalog import (
    FLAT_TORUS,
    lookup,
    make_abelian,
    make_nI,
    make_nIII,
    normalize_index,
    seven_dim_candidates,
)
from g2check.modules.lie_algebra import is_abelian, jacobi_defect, nilpotency_class


def test_candidates() -> None:
    entries = seven_dim_candidates()
    assert [entry.label for entry in entries] == [
        "nI(+1)",
        "nI(-1)",
        "nII+R",
        "nIII(+1)+R2",
        "nIII(-1)+R2",
        "abelian",
    ]
    for entry in entries:
        assert entry.value.dim == 7
        assert entry.value.signature == (4, 3)
        assert jacobi_defect(entry.value.algebra) == 0
        assert nilpotency_class(entry.value.algebra) is not None
    assert [entry.flipped for entry in entries] == [False, True, True, False, False, False]
    assert entries[-1].is_abelian and entries[-1].disposed_by == FLAT_TORUS
    assert not any(entry.is_abelian for entry in entries[:-1])


def test_padding_labels() -> None:
    padded = seven_dim_candidates()[3].value
    assert padded.basis_labels == ("a1", "a2", "w", "z1", "z2", "t1", "t2")
    assert padded.form[5, 5] == 1 and padded.form[6, 6] == -1


def test_epsilon_is_checked() -> None:
    with pytest.raises(ValueError):
        make_nI(0)
    with pytest.raises(ValueError):
        make_nIII(2)
    with pytest.raises(ValueError):
        make_abelian(0, 0)


def test_normalize_index() -> None:
    M, flipped = normalize_index(make_nIII(-1))
    assert flipped
    assert M.signature == (3, 2)
    same, flipped = normalize_index(make_nIII(1))
    assert not flipped and same == make_nIII(1)


def test_lookup() -> None:
    assert lookup("nIII(-1)+R2") == seven_dim_candidates()[4].value
    assert lookup("nI", -1) == make_nI(-1)
    assert is_abelian(lookup("abelian").algebra)
    with pytest.raises(KeyError):
        lookup("nIV")
