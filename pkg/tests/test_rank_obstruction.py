from fractions import Fraction

import pytest

from g2check.modules.catalog import make_nII, seven_dim_candidates
from g2check.modules.exact_linalg import Mat
from g2check.modules.g2_model import MElement, family_a, family_b
from g2check.modules.rank_obstruction import (
    Conclusion,
    RankTag,
    at_most_two_count,
    classify_rank2,
    constant_rank_two_certificate,
    embedding_obstruction,
    familyA_rank_locus,
    familyB_pair_identity,
    is_closed_subspace,
    is_constant_rank_at_most_two,
    obstruct_entry,
    predicted_rank_at_most_two,
    random_search_rank2_subalgebra,
    refutation_sweep,
    refute_rank2_3d_subspace,
    two_step_lemma_check,
    verify_rank2_classification,
)

X5 = MElement([0, 0, 0, 0, 1, 0])
X6 = MElement([0, 0, 0, 0, 0, 1])


def candidate(label: str):
    return next(entry for entry in seven_dim_candidates() if entry.label == label)


def test_classify_rank2() -> None:
    assert classify_rank2(MElement([0] * 6)).tag is RankTag.ZERO
    generic = classify_rank2(MElement([1, 0, 0, 0, 0, 0]))
    assert generic.tag is RankTag.RANK_ABOVE_2 and generic.rank == 4
    assert classify_rank2(family_a(1, 1, 1)).rank == 4
    assert classify_rank2(family_a(1, 1, 0)).rank == 4
    found = classify_rank2(family_a(0, 1, 1))
    assert found.tag is RankTag.FAMILY_A and found.rank == 2 and found.params == (0, 1, 1)
    assert classify_rank2(family_a(1, 0, 1)).at_most_two
    b = classify_rank2(family_b(1, 2, 0))
    assert b.tag is RankTag.FAMILY_B and b.params == (1, 2, 0)


def test_predicted_rank() -> None:
    assert predicted_rank_at_most_two(family_b(2, -3, 1).u)
    assert not predicted_rank_at_most_two(MElement([0, 1, 0, 1, 0, 0]).u)
    assert not predicted_rank_at_most_two(family_a(2, 3, 0).u)


def test_rank2_classification_sweep() -> None:
    sweep = verify_rank2_classification(2)
    assert sweep.passed
    assert sweep.total == 15625
    assert sweep.counts["Zero"] == 1
    assert sweep.counts["FamilyA"] == 44
    assert sweep.counts["FamilyB"] == 20
    assert at_most_two_count(sweep) == 65
    with pytest.raises(ValueError):
        verify_rank2_classification(1)


def test_familyA_rank_locus() -> None:
    locus = familyA_rank_locus()
    assert locus.certified
    assert locus.planes == ("u3 = 0", "u5 = 0")
    assert locus.minors_checked == 1225
    assert locus.witness_minor.support() == {0, 1}


def test_familyB_pairs() -> None:
    proportional = familyB_pair_identity(family_b(1, 2, 0), family_b(2, 4, 5))
    assert proportional.combination_checked and proportional.consistent
    assert proportional.determinant == 0
    assert proportional.difference == family_a(0, 0, Fraction(-5, 2))

    independent = familyB_pair_identity(family_b(1, 2, 0), family_b(1, 3, 0))
    assert independent.determinant == 1
    assert independent.sum_class.tag is RankTag.RANK_ABOVE_2
    assert not independent.combination_checked and independent.consistent

    opposite = familyB_pair_identity(family_b(1, 2, 0), family_b(-1, -2, 0))
    assert opposite.sum_class.tag is RankTag.ZERO
    assert not opposite.combination_checked

    with pytest.raises(ValueError):
        familyB_pair_identity(family_a(0, 0, 1), family_b(1, 2, 0))


def test_refutation_cases() -> None:
    found = refute_rank2_3d_subspace([family_b(1, 2, 0), family_a(0, 0, 1), family_a(1, 0, 0)])
    assert found.case == "family-b-plus-a"
    assert found.coefficients == (1, 0, 1)
    assert found.rank >= 3

    found = refute_rank2_3d_subspace([family_a(1, 0, 0), family_a(0, 1, 0), family_a(0, 0, 1)])
    assert found.case == "family-a"
    assert found.coefficients == (1, 1, 1)

    found = refute_rank2_3d_subspace([X5, MElement([1, 0, 0, 0, 0, 0]), X6])
    assert found.case == "u1"
    assert found.coefficients == (0, 1, 0)

    with pytest.raises(ValueError):
        refute_rank2_3d_subspace([X5, X6, 2 * X6])


def test_closed_subspaces() -> None:
    x = MElement([1, 2, 3, 4, 5, 6])
    assert is_closed_subspace([x, X5, X6])
    generators = [MElement([int(i == k) for i in range(6)]) for k in range(3)]
    assert not is_closed_subspace(generators)
    assert not is_constant_rank_at_most_two([family_a(1, 0, 0), family_a(0, 1, 0), family_a(0, 0, 1)])


def test_random_search() -> None:
    found = random_search_rank2_subalgebra(30, seed=0)
    assert found.passed
    assert sum(found.sampled.values()) == 30
    assert found.closed > 0
    assert sum(found.refutation_cases.values()) == found.closed
    with pytest.raises(ValueError):
        random_search_rank2_subalgebra(0)


def test_search_is_independent_of_jobs() -> None:
    serial = random_search_rank2_subalgebra(12, seed=3, jobs=1)
    parallel = random_search_rank2_subalgebra(12, seed=3, jobs=2)
    assert serial.closed == parallel.closed
    assert serial.refutation_cases == parallel.refutation_cases


def test_refutation_sweep() -> None:
    sweep = refutation_sweep(40, seed=1)
    assert sweep.passed
    assert sum(sweep.cases.values()) == 40


def test_certificate_needs_independent_matrices() -> None:
    with pytest.raises(ValueError):
        constant_rank_two_certificate(Mat.identity(7), Mat.identity(7), Mat.zeros(7, 7))


@pytest.mark.parametrize(
    "label, elements",
    [("nI(+1)", "ad(w)"), ("nI(-1)", "ad(w)"), ("nII+R", "ad(n)"), ("nIII(+1)+R2", "ad(n)"), ("nIII(-1)+R2", "ad(n)")],
)
def test_catalog_obstructions(label: str, elements: str) -> None:
    found = obstruct_entry(candidate(label))
    assert found.conclusion is Conclusion.NOT_EMBEDDABLE
    assert found.test_elements == elements
    assert found.closed
    certificate = found.constant_rank_certificate
    assert certificate.minor_identities_checked == 1225
    assert certificate.all_zero and certificate.holds
    assert certificate.image_verified is True


def test_abelian_and_inconclusive() -> None:
    assert obstruct_entry(candidate("abelian")).conclusion is Conclusion.ABELIAN_NO_OBSTRUCTION
    found = embedding_obstruction(make_nII(), "nII")
    assert found.conclusion is Conclusion.INCONCLUSIVE
    assert found.notes


def test_two_step() -> None:
    assert two_step_lemma_check(candidate("nII+R").value).passed
    assert two_step_lemma_check(candidate("nI(+1)").value).precondition_failed
