"""
Matrix model of the split real form g2(2) inside gl(7), its maximal strictly
lower triangular subalgebra m, and the invariant bilinear form and
three-form computed from the model.

Matrix positions in the entry tables below are 1-indexed (row, column),
matching the usual display of the model. Entry (5, 7) carries -u10: the
skew-symmetry of the model with respect to its invariant form forces it.
"""
from __future__ import annotations

import itertools
import logging
import math

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact_linalg import (
    Mat,
    Scalar,
    Subspace,
    Vector,
    kernel,
    rref_subspace,
    signature,
    solve,
    vector,
)
from .lie_algebra import LieAlgebra, nilpotency_class, symmetric_form

DIM = 7
G2_PARAMETERS = 14
M_PARAMETERS = 6

half = Fraction(1, 2)
quarter = Fraction(1, 4)

# parameter -> ((row, column), coefficient)
G2_ENTRIES: dict[int, tuple[tuple[tuple[int, int], Fraction], ...]] = {
    1: (((2, 1), 1), ((4, 3), -4), ((5, 4), 4), ((7, 6), -1)),
    2: (((3, 1), 1), ((4, 2), 4), ((6, 4), -4), ((7, 5), -1)),
    3: (((3, 2), 1), ((6, 5), -1)),
    4: (((4, 1), 1), ((5, 2), -2), ((6, 3), 2), ((7, 4), -1)),
    5: (((5, 1), 1), ((7, 3), -1)),
    6: (((6, 1), 1), ((7, 2), -1)),
    7: (((1, 1), 1), ((3, 3), 1), ((5, 5), -1), ((7, 7), -1)),
    8: (((2, 2), 1), ((3, 3), -1), ((5, 5), 1), ((6, 6), -1)),
    9: (((1, 2), 1), ((3, 4), -half), ((4, 5), half), ((6, 7), -1)),
    10: (((1, 3), 1), ((2, 4), half), ((4, 6), -half), ((5, 7), -1)),
    11: (((2, 3), 1), ((5, 6), -1)),
    12: (((1, 4), 1), ((2, 5), -quarter), ((3, 6), quarter), ((4, 7), -1)),
    13: (((1, 5), 1), ((3, 7), -1)),
    14: (((1, 6), 1), ((2, 7), -1)),
}

TRIPLES: tuple[tuple[int, int, int], ...] = tuple(itertools.combinations(range(DIM), 3))
TRIPLE_INDEX = {triple: position for position, triple in enumerate(TRIPLES)}


class ClosureError(ValueError):
    pass


class SolutionSpaceError(ValueError):
    pass


def _parameters(values: Sequence[Scalar], count: int) -> Vector:
    u = vector(values)
    if len(u) != count:
        raise ValueError(f"expected {count} parameters, got {len(u)}")
    return u


def _model_matrix(u: Sequence[Fraction]) -> Mat:
    rows = [[Fraction(0)] * DIM for _ in range(DIM)]
    for parameter, value in enumerate(u, start=1):
        if not value:
            continue
        for (r, c), coefficient in G2_ENTRIES[parameter]:
            rows[r - 1][c - 1] += coefficient * value
    return Mat(rows, cols=DIM)


@dataclass(frozen=True)
class G2Element:
    u: Vector

    def __init__(self, u: Sequence[Scalar]) -> None:
        object.__setattr__(self, "u", _parameters(u, G2_PARAMETERS))

    def to_matrix(self) -> Mat:
        return _model_matrix(self.u)


@dataclass(frozen=True)
class MElement:
    """
    Element of m, parameters (u1, ..., u6).
    """

    u: Vector

    def __init__(self, u: Sequence[Scalar]) -> None:
        object.__setattr__(self, "u", _parameters(u, M_PARAMETERS))

    def to_matrix(self) -> Mat:
        return _model_matrix(self.u)

    def embed(self) -> G2Element:
        return G2Element(self.u + (Fraction(0),) * (G2_PARAMETERS - M_PARAMETERS))

    def is_zero(self) -> bool:
        return not any(self.u)

    def __add__(self, other: MElement) -> MElement:
        return MElement([a + b for a, b in zip(self.u, other.u)])

    def __neg__(self) -> MElement:
        return MElement([-a for a in self.u])

    def __sub__(self, other: MElement) -> MElement:
        return self + (-other)

    def __rmul__(self, c: Scalar) -> MElement:
        c = Fraction(c)
        return MElement([c * a for a in self.u])


def family_a(u3: Scalar, u5: Scalar, u6: Scalar) -> MElement:
    """
    A(u3, u5, u6): the elements of m with u1 = u2 = u4 = 0.
    """
    return MElement([0, 0, u3, 0, u5, u6])


def family_b(u2: Scalar, u4: Scalar, u6: Scalar) -> MElement:
    """
    B(u2, u4, u6) with u3 = 4 u2^2 / u4 and u5 = -u4^2 / (2 u2); needs u2, u4 nonzero.
    """
    u2, u4 = Fraction(u2), Fraction(u4)
    if u2 == 0 or u4 == 0:
        raise ValueError("family B needs u2 and u4 nonzero")
    return MElement([0, u2, 4 * u2 * u2 / u4, u4, -u4 * u4 / (2 * u2), u6])


def g2_to_matrix(e: G2Element | Sequence[Scalar]) -> Mat:
    if not isinstance(e, G2Element):
        e = G2Element(e)
    return e.to_matrix()


def m_to_matrix(e: MElement | Sequence[Scalar]) -> Mat:
    if not isinstance(e, MElement):
        e = MElement(e)
    return e.to_matrix()


@lru_cache(maxsize=None)
def g2_generators() -> tuple[Mat, ...]:
    return tuple(_model_matrix([1 if k == i else 0 for k in range(G2_PARAMETERS)]) for i in range(G2_PARAMETERS))


def m_generators() -> tuple[Mat, ...]:
    return g2_generators()[:M_PARAMETERS]


@lru_cache(maxsize=None)
def generator_span() -> Subspace:
    """
    The 14-dimensional span of the model inside the 49-dimensional matrix space.
    """
    return rref_subspace((G.flatten() for G in g2_generators()), DIM * DIM)


def _coordinates(M: Mat, generators: Sequence[Mat]) -> Vector | None:
    system = Mat.from_columns([G.flatten() for G in generators])
    return solve(system, M.flatten())


def membership_in_g2(M: Mat) -> G2Element | None:
    u = _coordinates(M, g2_generators())
    if u is None or _model_matrix(u) != M:
        return None
    return G2Element(u)


def membership_in_m(M: Mat) -> MElement | None:
    u = _coordinates(M, m_generators())
    if u is None or _model_matrix(u) != M:
        return None
    return MElement(u)


def _structure_constants(generators: Sequence[Mat], labels: Sequence[str]) -> LieAlgebra:
    brackets = {}
    for i, j in itertools.combinations(range(len(generators)), 2):
        commutator = generators[i].commutator(generators[j])
        coords = _coordinates(commutator, generators)
        if coords is None:
            raise ClosureError(f"[{labels[i]}, {labels[j]}] leaves the span of the generators")
        brackets[(i, j)] = coords
    return LieAlgebra(labels, brackets)


@lru_cache(maxsize=None)
def structure_constants_of_g2() -> LieAlgebra:
    algebra = _structure_constants(g2_generators(), [f"u{k}" for k in range(1, G2_PARAMETERS + 1)])
    logging.debug(f"g2(2) closes with {len(algebra.structure)} nonzero brackets")
    return algebra


@lru_cache(maxsize=None)
def m_structure() -> LieAlgebra:
    return _structure_constants(m_generators(), [f"u{k}" for k in range(1, M_PARAMETERS + 1)])


def m_nilpotency_class() -> int | None:
    return nilpotency_class(m_structure())


def _integer_normalized(values: Sequence[Fraction]) -> Vector:
    """
    Scales to coprime integers with the first nonzero entry positive.
    """
    denominators = math.lcm(*(v.denominator for v in values))
    ints = [int(v * denominators) for v in values]
    divisor = math.gcd(*ints)
    lead = next(x for x in ints if x)
    sign = 1 if lead > 0 else -1
    return tuple(Fraction(sign * x, divisor) for x in ints)


def is_skew(A: Mat, S: Mat) -> bool:
    """
    A^T S + S A = 0.
    """
    return ((A.transpose() @ S) + (S @ A)).is_zero()


@lru_cache(maxsize=None)
def invariant_bilinear_form() -> Mat:
    """
    The symmetric form, unique up to scale, for which every generator is
    skew; integer-normalized with signature (4, 3).
    """
    pairs = list(itertools.combinations_with_replacement(range(DIM), 2))
    unknowns = len(pairs)
    rows = []
    for A in g2_generators():
        # (A^T S + S A)[a][b] = sum_m A[m][a] S[m][b] + S[a][m] A[m][b]
        for a, b in itertools.combinations_with_replacement(range(DIM), 2):
            row = [Fraction(0)] * unknowns
            for m in range(DIM):
                if A[m, a]:
                    row[pairs.index((min(m, b), max(m, b)))] += A[m, a]
                if A[m, b]:
                    row[pairs.index((min(a, m), max(a, m)))] += A[m, b]
            if any(row):
                rows.append(row)
    space = kernel(Mat(rows, cols=unknowns))
    if space.dim != 1:
        raise SolutionSpaceError(f"invariant bilinear forms form a space of dimension {space.dim}, expected 1")
    S = symmetric_form(DIM, _integer_normalized(space.vectors[0]))
    p, q, _ = signature(S)
    if p < q:
        S = -S
    return S


@dataclass(frozen=True)
class ThreeForm:
    """
    Alternating three-form on Q^7, components phi_ijk for i < j < k in
    lexicographic order.
    """

    components: Vector

    def __init__(self, components: Sequence[Scalar]) -> None:
        values = vector(components)
        if len(values) != len(TRIPLES):
            raise ValueError(f"a three-form on Q^7 has {len(TRIPLES)} components, got {len(values)}")
        object.__setattr__(self, "components", values)

    @classmethod
    def decomposable(cls, i: int, j: int, k: int) -> ThreeForm:
        """
        e^i ^ e^j ^ e^k for 0-indexed i, j, k.
        """
        values = [0] * len(TRIPLES)
        sign, key = _sorted_triple(i, j, k)
        if sign == 0:
            return cls(values)
        values[TRIPLE_INDEX[key]] = sign
        return cls(values)

    def value(self, i: int, j: int, k: int) -> Fraction:
        sign, key = _sorted_triple(i, j, k)
        if sign == 0:
            return Fraction(0)
        return sign * self.components[TRIPLE_INDEX[key]]

    def is_zero(self) -> bool:
        return not any(self.components)

    def nonzero_terms(self) -> dict[tuple[int, int, int], Fraction]:
        return {t: c for t, c in zip(TRIPLES, self.components) if c}


def _sorted_triple(i: int, j: int, k: int) -> tuple[int, tuple[int, int, int]]:
    if len({i, j, k}) < 3:
        return 0, (i, j, k)
    items = [i, j, k]
    sign = 1
    for a in range(3):
        for b in range(2 - a):
            if items[b] > items[b + 1]:
                items[b], items[b + 1] = items[b + 1], items[b]
                sign = -sign
    return sign, tuple(items)


def _action_row(A: Mat, triple: tuple[int, int, int]) -> list[Fraction]:
    """
    Coefficients of (A.phi)(e_i, e_j, e_k) = -phi(Ae_i, e_j, e_k) - phi(e_i, Ae_j, e_k) - phi(e_i, e_j, Ae_k)
    in the components of phi.
    """
    row = [Fraction(0)] * len(TRIPLES)
    for slot in range(3):
        column = triple[slot]
        for m in range(DIM):
            coefficient = A[m, column]
            if not coefficient:
                continue
            replaced = list(triple)
            replaced[slot] = m
            sign, key = _sorted_triple(*replaced)
            if sign:
                row[TRIPLE_INDEX[key]] -= sign * coefficient
    return row


@lru_cache(maxsize=None)
def invariant_three_forms() -> Subspace:
    """
    Three-forms annihilated by every generator of the model.
    """
    rows = [row for A in g2_generators() for t in TRIPLES if any(row := _action_row(A, t))]
    space = kernel(Mat(rows, cols=len(TRIPLES)))
    if space.dim != 1:
        raise SolutionSpaceError(f"invariant three-forms form a space of dimension {space.dim}, expected 1")
    return space


@lru_cache(maxsize=None)
def g2_three_form() -> ThreeForm:
    return ThreeForm(_integer_normalized(invariant_three_forms().vectors[0]))


def annihilates(A: Mat, phi: ThreeForm) -> bool:
    return all(
        sum((c * phi.components[index] for index, c in enumerate(_action_row(A, t)) if c), Fraction(0)) == 0
        for t in TRIPLES
    )


def stabilizer_in_gl(phi: ThreeForm) -> Subspace:
    """
    All 7x7 matrices A with A.phi = 0, flattened row-major.
    """
    if phi.is_zero():
        raise ValueError("the stabilizer of the zero form is all of gl(7)")
    rows = []
    for triple in TRIPLES:
        row = [Fraction(0)] * (DIM * DIM)
        for slot in range(3):
            column = triple[slot]
            for m in range(DIM):
                replaced = list(triple)
                replaced[slot] = m
                value = phi.value(*replaced)
                if value:
                    row[m * DIM + column] -= value
        rows.append(row)
    return kernel(Mat(rows, cols=DIM * DIM))
