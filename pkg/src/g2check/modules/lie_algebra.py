"""
Lie algebras given by structure constants, and metric Lie algebras.

Brackets are stored for basis pairs i < j only, so antisymmetry holds by
construction. Jacobi, nondegeneracy and invariance are checked when an
algebra is built; a failed check raises.
"""
from __future__ import annotations

import itertools
import logging

from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .exact_linalg import (
    DegenerateFormError,
    DimensionMismatchError,
    Mat,
    NonSymmetricError,
    Scalar,
    Subspace,
    Vector,
    dot,
    intersect,
    is_zero_vector,
    kernel,
    rank,
    rref,
    rref_subspace,
    signature,
    solve,
    subspace_sum,
    unit_vector,
    vector,
    whole_space,
    zero_subspace,
)

Triple = tuple[str, str, str]


class JacobiError(ValueError):
    def __init__(self, message: str, witness: Optional[Triple] = None) -> None:
        super().__init__(message)
        self.witness = witness


class InvarianceError(ValueError):
    def __init__(self, message: str, witness: Optional[Triple] = None, residual: Fraction = Fraction(0)) -> None:
        super().__init__(message)
        self.witness = witness
        self.residual = residual


class LieAlgebra:
    """
    Finite-dimensional Lie algebra over Q on a labelled basis.

    ``brackets`` maps an index pair (i, j) with i < j to the coordinates of
    [e_i, e_j]. Pairs that are not listed bracket to zero.
    """

    __slots__ = ("dim", "basis_labels", "structure")

    def __init__(
        self,
        basis_labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Sequence[Scalar]] | None = None,
        validate: bool = True,
    ) -> None:
        labels = tuple(basis_labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate basis labels in {labels}")
        n = len(labels)
        structure: dict[tuple[int, int], Vector] = {}
        for (i, j), value in (brackets or {}).items():
            if not 0 <= i < j < n:
                raise ValueError(f"structure constants are stored for index pairs i < j, got ({i}, {j})")
            v = vector(value)
            if len(v) != n:
                raise DimensionMismatchError(f"bracket [{labels[i]}, {labels[j]}] has {len(v)} coordinates, expected {n}")
            if not is_zero_vector(v):
                structure[(i, j)] = v
        self.dim = n
        self.basis_labels = labels
        self.structure = structure
        if validate:
            found = jacobi_witness(self)
            if found is not None:
                triple, jacobiator = found
                raise JacobiError(f"Jacobi identity fails on {triple}: {jacobiator}", witness=triple)

    @classmethod
    def from_relations(
        cls,
        basis_labels: Sequence[str],
        relations: Mapping[tuple[str, str], Mapping[str, Scalar]],
        validate: bool = True,
    ) -> LieAlgebra:
        """
        Builds an algebra from relations such as ``{("a1", "a2"): {"w1": 1}}``.
        A pair given in reverse order is negated.
        """
        labels = tuple(basis_labels)
        position = {label: i for i, label in enumerate(labels)}
        brackets: dict[tuple[int, int], list[Fraction]] = {}
        for (x, y), combination in relations.items():
            if x not in position or y not in position:
                raise ValueError(f"unknown basis label in [{x}, {y}]")
            i, j = position[x], position[y]
            if i == j:
                raise ValueError(f"[{x}, {x}] is zero by antisymmetry")
            sign = 1 if i < j else -1
            key = (min(i, j), max(i, j))
            if key in brackets:
                raise ValueError(f"bracket of {x} and {y} given twice")
            v = [Fraction(0)] * len(labels)
            for label, c in combination.items():
                if label not in position:
                    raise ValueError(f"unknown basis label {label}")
                v[position[label]] += sign * Fraction(c)
            brackets[key] = v
        return cls(labels, brackets, validate=validate)

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def basis_vector(self, key: int | str) -> Vector:
        i = self.index(key) if isinstance(key, str) else key
        return unit_vector(self.dim, i)

    def basis_vectors(self) -> list[Vector]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return (Fraction(0),) * self.dim
        if i < j:
            return self.structure.get((i, j), (Fraction(0),) * self.dim)
        return tuple(-c for c in self.structure.get((j, i), (Fraction(0),) * self.dim))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis_labels == other.basis_labels and self.structure == other.structure

    __hash__ = None

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, labels={self.basis_labels})"


def _check_vector(L: LieAlgebra, x: Sequence[Fraction]) -> None:
    if len(x) != L.dim:
        raise DimensionMismatchError(f"vector of length {len(x)} in an algebra of dimension {L.dim}")


def bracket(L: LieAlgebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    x, y = vector(x), vector(y)
    _check_vector(L, x)
    _check_vector(L, y)
    result = [Fraction(0)] * L.dim
    for (i, j), c in L.structure.items():
        coeff = x[i] * y[j] - x[j] * y[i]
        if coeff:
            for k, ck in enumerate(c):
                if ck:
                    result[k] += coeff * ck
    return tuple(result)


def _jacobiator(L: LieAlgebra, i: int, j: int, k: int) -> Vector:
    ei, ej, ek = (unit_vector(L.dim, t) for t in (i, j, k))
    terms = (
        bracket(L, L.bracket_basis(i, j), ek),
        bracket(L, L.bracket_basis(j, k), ei),
        bracket(L, L.bracket_basis(k, i), ej),
    )
    return tuple(sum(parts, Fraction(0)) for parts in zip(*terms))


def _jacobi_scan(L: LieAlgebra) -> tuple[Fraction, Optional[Triple], Vector]:
    worst = Fraction(0)
    witness: Optional[Triple] = None
    worst_vector: Vector = ()
    for i, j, k in itertools.combinations(range(L.dim), 3):
        jac = _jacobiator(L, i, j, k)
        size = max((abs(c) for c in jac), default=Fraction(0))
        if size > worst:
            worst = size
            witness = (L.basis_labels[i], L.basis_labels[j], L.basis_labels[k])
            worst_vector = jac
    return worst, witness, worst_vector


def jacobi_defect(L: LieAlgebra) -> Fraction:
    """
    Largest absolute coordinate of a Jacobiator over basis triples; zero iff L is a Lie algebra.
    """
    return _jacobi_scan(L)[0]


def jacobi_witness(L: LieAlgebra) -> tuple[Triple, Vector] | None:
    """
    First basis triple (in lexicographic order) realising the Jacobi defect, with its Jacobiator.
    """
    worst, witness, jac = _jacobi_scan(L)
    if witness is None:
        return None
    logging.debug(f"Jacobi defect {worst} at {witness}")
    return witness, jac


def ad_matrix(L: LieAlgebra, x: Sequence[Scalar]) -> Mat:
    x = vector(x)
    _check_vector(L, x)
    columns = [bracket(L, x, unit_vector(L.dim, j)) for j in range(L.dim)]
    return Mat.from_columns(columns)


def is_abelian(L: LieAlgebra) -> bool:
    return not L.structure


def bracket_subspaces(L: LieAlgebra, S: Subspace, T: Subspace) -> Subspace:
    """
    The span of [s, t] over s in S and t in T.
    """
    return rref_subspace((bracket(L, s, t) for s in S.vectors for t in T.vectors), L.dim)


def center(L: LieAlgebra) -> Subspace:
    # x is central iff [x, e_j] = 0 for every j: one equation per (j, k) coordinate
    rows = []
    for j in range(L.dim):
        for k in range(L.dim):
            rows.append([L.bracket_basis(i, j)[k] for i in range(L.dim)])
    return kernel(Mat(rows, cols=L.dim))


def derived_algebra(L: LieAlgebra) -> Subspace:
    everything = whole_space(L.dim)
    return bracket_subspaces(L, everything, everything)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """
    C^1 = L, C^(k+1) = [L, C^k]. Ends at the zero subspace, or at the first
    term that repeats when L is not nilpotent.
    """
    everything = whole_space(L.dim)
    series = [everything]
    while series[-1].dim > 0:
        following = bracket_subspaces(L, everything, series[-1])
        if following == series[-1]:
            break
        series.append(following)
    return series


def nilpotency_class(L: LieAlgebra) -> int | None:
    """
    Largest k with C^k nonzero, or None when L is not nilpotent.
    """
    series = lower_central_series(L)
    if series[-1].dim > 0:
        return None
    return len(series) - 1


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return bracket_subspaces(L, whole_space(L.dim), S).is_subspace_of(S)


def _trace_of_product(A: Mat, B: Mat) -> Fraction:
    total = Fraction(0)
    for i, row in enumerate(A.entries):
        for k, a in enumerate(row):
            if a:
                b = B.entries[k][i]
                if b:
                    total += a * b
    return total


def killing_form(L: LieAlgebra) -> Mat:
    ads = [ad_matrix(L, unit_vector(L.dim, i)) for i in range(L.dim)]
    return Mat(((_trace_of_product(A, B) for B in ads) for A in ads), cols=L.dim)


def _symmetric_index(n: int) -> dict[tuple[int, int], int]:
    index = {}
    for position, (a, b) in enumerate(itertools.combinations_with_replacement(range(n), 2)):
        index[(a, b)] = position
        index[(b, a)] = position
    return index


def symmetric_form(n: int, coordinates: Sequence[Scalar]) -> Mat:
    """
    Symmetric matrix whose upper-triangular entries, read row by row, are ``coordinates``.
    """
    coordinates = vector(coordinates)
    if len(coordinates) != n * (n + 1) // 2:
        raise DimensionMismatchError(f"{len(coordinates)} coordinates for a symmetric {n}x{n} form")
    index = _symmetric_index(n)
    return Mat(((coordinates[index[(a, b)]] for b in range(n)) for a in range(n)), cols=n)


def symmetric_form_coordinates(form: Mat) -> Vector:
    if not form.is_symmetric():
        raise NonSymmetricError("expected a symmetric form")
    return tuple(form[a, b] for a, b in itertools.combinations_with_replacement(range(form.rows), 2))


def invariant_symmetric_forms(L: LieAlgebra) -> Subspace:
    """
    Solution space of <[x,y],z> + <y,[x,z]> = 0 over basis triples, in the
    coordinates of ``symmetric_form``.
    """
    n = L.dim
    index = _symmetric_index(n)
    unknowns = n * (n + 1) // 2
    rows = []
    for i in range(n):
        for j in range(n):
            cij = L.bracket_basis(i, j)
            for k in range(j, n):
                cik = L.bracket_basis(i, k)
                row = [Fraction(0)] * unknowns
                for m in range(n):
                    if cij[m]:
                        row[index[(m, k)]] += cij[m]
                    if cik[m]:
                        row[index[(j, m)]] += cik[m]
                if any(row):
                    rows.append(row)
    space = kernel(Mat(rows, cols=unknowns))
    logging.debug(f"invariant symmetric forms of a {n}-dimensional algebra: dimension {space.dim}")
    return space


def invariant_forms_common_radical(L: LieAlgebra) -> Subspace:
    """
    Vectors in the kernel of every invariant symmetric form. A nonzero result
    certifies that no invariant form is nondegenerate.
    """
    common = whole_space(L.dim)
    for coordinates in invariant_symmetric_forms(L).vectors:
        common = intersect(common, kernel(symmetric_form(L.dim, coordinates)))
    return common


def invariance_witness(L: LieAlgebra, form: Mat) -> tuple[Triple, Fraction] | None:
    """
    First basis triple (x, y, z) with <[x,y],z> + <y,[x,z]> != 0, and the residual.
    """
    n = L.dim
    for i in range(n):
        for j in range(n):
            cij = L.bracket_basis(i, j)
            for k in range(n):
                cik = L.bracket_basis(i, k)
                residual = dot(cij, form.column(k)) + dot(form.row(j), cik)
                if residual:
                    labels = L.basis_labels
                    return (labels[i], labels[j], labels[k]), residual
    return None


class MetricLieAlgebra:
    """
    A Lie algebra with a nondegenerate invariant symmetric bilinear form.
    """

    __slots__ = ("algebra", "form", "_signature")

    def __init__(self, algebra: LieAlgebra, form: Mat | Sequence[Sequence[Scalar]], validate: bool = True) -> None:
        form = form if isinstance(form, Mat) else Mat(form)
        if form.shape != (algebra.dim, algebra.dim):
            raise DimensionMismatchError(f"form of shape {form.shape} on an algebra of dimension {algebra.dim}")
        if not form.is_symmetric():
            raise NonSymmetricError("the scalar product must be symmetric")
        if validate:
            if rank(form) < algebra.dim:
                raise DegenerateFormError(f"form has rank {rank(form)} < {algebra.dim}")
            found = invariance_witness(algebra, form)
            if found is not None:
                triple, residual = found
                raise InvarianceError(f"form is not invariant on {triple}: residual {residual}", triple, residual)
        self.algebra = algebra
        self.form = form
        self._signature: tuple[int, int, int] | None = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis_labels(self) -> tuple[str, ...]:
        return self.algebra.basis_labels

    @property
    def signature(self) -> tuple[int, int]:
        if self._signature is None:
            self._signature = signature(self.form)
        p, q, _ = self._signature
        return (p, q)

    @property
    def index(self) -> int:
        return min(self.signature)

    def inner(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Fraction:
        return self.form.bilinear(vector(x), vector(y))

    def flipped(self) -> MetricLieAlgebra:
        """
        Same algebra with the form negated; swaps (p, q).
        """
        return MetricLieAlgebra(self.algebra, -self.form, validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricLieAlgebra):
            return NotImplemented
        return self.algebra == other.algebra and self.form == other.form

    __hash__ = None

    def __repr__(self) -> str:
        return f"MetricLieAlgebra(dim={self.dim}, signature={self.signature})"


class WittDecomposition:
    """
    n = jstar + w + j with j and jstar totally isotropic and dually paired,
    and w orthogonal to both.

    ``jstar_basis`` is paired with the canonical basis of ``j`` so that the
    pairing matrix is the identity.
    """

    __slots__ = ("jstar", "w", "j", "jstar_basis", "pairing")

    def __init__(self, jstar: Subspace, w: Subspace, j: Subspace, jstar_basis: Sequence[Vector], pairing: Mat) -> None:
        self.jstar = jstar
        self.w = w
        self.j = j
        self.jstar_basis = tuple(jstar_basis)
        self.pairing = pairing

    def __repr__(self) -> str:
        return f"WittDecomposition(dim jstar={self.jstar.dim}, dim w={self.w.dim}, dim j={self.j.dim})"


def is_totally_isotropic(M: MetricLieAlgebra, S: Subspace) -> bool:
    return all(M.inner(x, y) == 0 for x in S.vectors for y in S.vectors)


def isotropic_ideal_j(M: MetricLieAlgebra) -> Subspace:
    """
    The intersection of the center with the derived algebra.
    """
    L = M.algebra
    j = intersect(center(L), derived_algebra(L))
    if not is_totally_isotropic(M, j):
        raise InvarianceError("center meets derived algebra in a non-isotropic subspace")
    if not is_ideal(L, j):
        raise InvarianceError("center meets derived algebra in a non-ideal")
    return j


def orthogonal_complement(M: MetricLieAlgebra, S: Subspace) -> Subspace:
    if S.ambient_dim != M.dim:
        raise DimensionMismatchError(f"subspace of Q^{S.ambient_dim} in an algebra of dimension {M.dim}")
    if rank(M.form) < M.dim:
        raise DegenerateFormError("orthogonal complement with respect to a degenerate form")
    if S.dim == 0:
        return whole_space(M.dim)
    return kernel(S.basis @ M.form)


def witt_decomposition(M: MetricLieAlgebra) -> WittDecomposition:
    """
    Deterministic decomposition n = jstar + w + j.

    Dual vectors for the canonical basis of j are built on the lowest-index
    basis vectors that pair nondegenerately with j, then made isotropic by
    subtracting half of their mutual pairings along j. w is the orthogonal
    complement of j + jstar.
    """
    n = M.dim
    j = isotropic_ideal_j(M)
    r = j.dim
    if r == 0:
        return WittDecomposition(zero_subspace(n), whole_space(n), j, (), Mat((), cols=0))
    jvecs = j.vectors
    pairing_rows = j.basis @ M.form
    _, pivots = rref(pairing_rows.entries, n)
    square = Mat(((row[p] for p in pivots) for row in pairing_rows.entries), cols=r)
    duals: list[Vector] = []
    for k in range(r):
        c = solve(square, unit_vector(r, k))
        if c is None:
            raise DegenerateFormError("j is not dually paired by the form")
        y = [Fraction(0)] * n
        for coefficient, p in zip(c, pivots):
            y[p] = coefficient
        duals.append(tuple(y))
    jstar_basis = []
    for yk in duals:
        a = list(yk)
        for yl, jl in zip(duals, jvecs):
            shift = M.inner(yk, yl) / 2
            if shift:
                a = [ai - shift * ji for ai, ji in zip(a, jl)]
        jstar_basis.append(tuple(a))
    jstar = rref_subspace(jstar_basis, n)
    w = orthogonal_complement(M, subspace_sum(j, jstar))
    pairing = Mat(((M.inner(a, z) for z in jvecs) for a in jstar_basis), cols=r)
    logging.debug(f"Witt decomposition: dim jstar={jstar.dim}, dim w={w.dim}, dim j={r}")
    return WittDecomposition(jstar, w, j, jstar_basis, pairing)


def _disambiguate(first: Sequence[str], second: Sequence[str]) -> tuple[str, ...]:
    taken = set(first)
    renamed = []
    for label in second:
        candidate = label
        suffix = 2
        while candidate in taken:
            candidate = f"{label}_{suffix}"
            suffix += 1
        taken.add(candidate)
        renamed.append(candidate)
    return tuple(renamed)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    """
    L1 x L2 with brackets vanishing between summands. Clashing labels of L2 get a numeric suffix.
    """
    n1, n2 = L1.dim, L2.dim
    labels = L1.basis_labels + _disambiguate(L1.basis_labels, L2.basis_labels)
    brackets: dict[tuple[int, int], Vector] = {}
    for (i, j), c in L1.structure.items():
        brackets[(i, j)] = c + (Fraction(0),) * n2
    for (i, j), c in L2.structure.items():
        brackets[(n1 + i, n1 + j)] = (Fraction(0),) * n1 + c
    return LieAlgebra(labels, brackets, validate=False)


def orthogonal_direct_sum(M1: MetricLieAlgebra, M2: MetricLieAlgebra) -> MetricLieAlgebra:
    n1, n2 = M1.dim, M2.dim
    rows = [row + (Fraction(0),) * n2 for row in M1.form.entries]
    rows += [(Fraction(0),) * n1 + row for row in M2.form.entries]
    return MetricLieAlgebra(direct_sum(M1.algebra, M2.algebra), Mat(rows, cols=n1 + n2))


def adjoint_image(L: LieAlgebra, S: Subspace | None = None) -> Subspace:
    """
    span{ad(s) : s in S} inside the n*n-dimensional space of matrices, flattened row-major.
    """
    S = whole_space(L.dim) if S is None else S
    return rref_subspace((ad_matrix(L, s).flatten() for s in S.vectors), L.dim * L.dim)
