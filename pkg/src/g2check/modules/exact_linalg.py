"""
Exact linear algebra over the rationals.

Every rank, kernel and signature in g2check is computed here with
``fractions.Fraction`` entries; floats are rejected at the door. Symbolic
pencils and their minors are sympy matrices over QQ.
"""
from __future__ import annotations

import itertools
import logging

from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import sympy as sp

Vector = tuple[Fraction, ...]
Scalar = Union[int, str, Fraction]


class DimensionMismatchError(ValueError):
    pass


class NonSymmetricError(ValueError):
    pass


class DegenerateFormError(ValueError):
    pass


class DegreeOverflowError(ValueError):
    pass


def to_rational(value: Scalar) -> Fraction:
    """
    Converts ints, ``"p"``/``"p/q"`` strings and fractions to a reduced Fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}")
    return Fraction(value)


def vector(values: Iterable[Scalar]) -> Vector:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, index: int) -> Vector:
    return tuple(Fraction(1) if i == index else Fraction(0) for i in range(n))


def add_vectors(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatchError(f"cannot add vectors of length {len(x)} and {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def scale_vector(c: Scalar, x: Sequence[Fraction]) -> Vector:
    c = to_rational(c)
    return tuple(c * a for a in x)


def linear_combination(coefficients: Sequence[Scalar], vectors: Sequence[Sequence[Fraction]]) -> Vector:
    if len(coefficients) != len(vectors):
        raise DimensionMismatchError("one coefficient per vector is required")
    if not vectors:
        raise ValueError("empty linear combination has no length")
    result = [Fraction(0)] * len(vectors[0])
    for c, v in zip(coefficients, vectors):
        c = to_rational(c)
        if c == 0:
            continue
        for i, a in enumerate(v):
            if a:
                result[i] += c * a
    return tuple(result)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise DimensionMismatchError(f"cannot pair vectors of length {len(x)} and {len(y)}")
    return sum((a * b for a, b in zip(x, y) if a and b), Fraction(0))


def is_zero_vector(x: Sequence[Fraction]) -> bool:
    return not any(x)


class Mat:
    """
    Immutable dense matrix of Fractions, stored row-major.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[Scalar]], cols: int | None = None) -> None:
        grid = tuple(tuple(to_rational(x) for x in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise DimensionMismatchError(f"ragged row of length {len(row)}, expected {cols}")
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Mat:
        return cls(((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls((unit_vector(n, i) for i in range(n)), cols=n)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> Mat:
        n = len(values)
        return cls(((values[i] if i == j else 0 for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int | None = None) -> Mat:
        if not columns:
            return cls((() for _ in range(rows or 0)), cols=0)
        height = len(columns[0])
        return cls(((columns[j][i] for j in range(len(columns))) for i in range(height)), cols=len(columns))

    @classmethod
    def from_flat(cls, values: Sequence[Scalar], rows: int, cols: int) -> Mat:
        if len(values) != rows * cols:
            raise DimensionMismatchError(f"{len(values)} values cannot fill a {rows}x{cols} matrix")
        return cls((values[i * cols:(i + 1) * cols] for i in range(rows)), cols=cols)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> Mat:
        return Mat((self.column(j) for j in range(self.cols)), cols=self.rows)

    def _check_shape(self, other: Mat) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape {self.shape} does not match {other.shape}")

    def __add__(self, other: Mat) -> Mat:
        self._check_shape(other)
        return Mat((add_vectors(a, b) for a, b in zip(self.entries, other.entries)), cols=self.cols)

    def __sub__(self, other: Mat) -> Mat:
        return self + other.scale(-1)

    def __neg__(self) -> Mat:
        return self.scale(-1)

    def scale(self, c: Scalar) -> Mat:
        return Mat((scale_vector(c, row) for row in self.entries), cols=self.cols)

    def __matmul__(self, other: Mat) -> Mat:
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        result = [[Fraction(0)] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            out = result[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other.entries[k]):
                    if b:
                        out[j] += a * b
        return Mat(result, cols=other.cols)

    def apply(self, x: Sequence[Fraction]) -> Vector:
        if len(x) != self.cols:
            raise DimensionMismatchError(f"cannot apply {self.shape} matrix to a vector of length {len(x)}")
        return tuple(dot(row, x) for row in self.entries)

    def bilinear(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """
        Returns x^T M y.
        """
        return dot(x, self.apply(y))

    def gram(self, basis: Sequence[Sequence[Fraction]]) -> Mat:
        """
        Matrix of the bilinear form M restricted to the span of ``basis``.
        """
        return Mat(((self.bilinear(x, y) for y in basis) for x in basis), cols=len(basis))

    def commutator(self, other: Mat) -> Mat:
        return (self @ other) - (other @ self)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatchError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def flatten(self) -> Vector:
        return tuple(itertools.chain.from_iterable(self.entries))

    def to_sympy(self) -> sp.Matrix:
        return sp.Matrix(self.rows, self.cols, lambda i, j: to_sympy(self.entries[i][j]))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_strictly_lower_triangular(self) -> bool:
        return all(self.entries[i][j] == 0 for i in range(self.rows) for j in range(i, self.cols))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def rref(rows: Sequence[Sequence[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """
    Gauss-Jordan elimination. Returns the nonzero rows of the reduced row
    echelon form together with their pivot columns.
    """
    m = [list(row) for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                src = m[r]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], src)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _echelon_rank(rows: Sequence[Sequence[Fraction]], cols: int) -> int:
    m = [list(row) for row in rows if any(row)]
    rank = 0
    for c in range(cols):
        pivot_row = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        lead = m[rank][c]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / lead
                src = m[rank]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], src)]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(M: Mat) -> int:
    return _echelon_rank(M.entries, M.cols)


def rank_of_vectors(vectors: Sequence[Sequence[Fraction]]) -> int:
    if not vectors:
        return 0
    return _echelon_rank(vectors, len(vectors[0]))


def determinant(M: Mat) -> Fraction:
    if M.rows != M.cols:
        raise DimensionMismatchError("determinant of a non-square matrix")
    m = [list(row) for row in M.entries]
    n = M.rows
    det = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            det = -det
        lead = m[c][c]
        det *= lead
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / lead
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


class Subspace:
    """
    A subspace of Q^n held by the reduced row echelon form of a basis.

    The basis is canonical, so two Subspace values are equal exactly when
    they describe the same span.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Mat, pivots: Sequence[int]) -> None:
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return self.basis.entries

    def coordinates(self, v: Sequence[Fraction]) -> Vector | None:
        """
        Coefficients of v in the canonical basis, or None if v is not in the span.
        """
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(v)} in a space of dimension {self.ambient_dim}")
        coeffs = tuple(v[p] for p in self.pivots)
        if self.dim == 0:
            return coeffs if is_zero_vector(v) else None
        if linear_combination(coeffs, self.vectors) != tuple(v):
            return None
        return coeffs

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v: Sequence[Fraction]) -> bool:
        return self.contains(v)

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.vectors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def rref_subspace(vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> Subspace:
    rows = [vector(v) for v in vectors]
    for v in rows:
        if len(v) != ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(v)} in a space of dimension {ambient_dim}")
    reduced, pivots = rref(rows, ambient_dim)
    return Subspace(ambient_dim, Mat(reduced, cols=ambient_dim), pivots)


def whole_space(n: int) -> Subspace:
    return rref_subspace((unit_vector(n, i) for i in range(n)), n)


def zero_subspace(n: int) -> Subspace:
    return rref_subspace((), n)


def kernel(M: Mat) -> Subspace:
    """
    Null space {x : M x = 0}.
    """
    reduced, pivots = rref(M.entries, M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(v)
    return rref_subspace(basis, M.cols)


def annihilator(S: Subspace) -> Subspace:
    """
    Vectors whose standard dot product with every element of S vanishes.
    """
    return kernel(Mat(S.vectors, cols=S.ambient_dim))


def _check_ambient(S: Subspace, T: Subspace) -> None:
    if S.ambient_dim != T.ambient_dim:
        raise DimensionMismatchError(f"subspaces live in dimensions {S.ambient_dim} and {T.ambient_dim}")


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    return rref_subspace(S.vectors + T.vectors, S.ambient_dim)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    return annihilator(subspace_sum(annihilator(S), annihilator(T)))


def contains(S: Subspace, v: Sequence[Scalar]) -> bool:
    return S.contains(vector(v))


def solve(M: Mat, b: Sequence[Scalar]) -> Vector | None:
    """
    One exact solution of M x = b (free variables set to zero), or None.
    """
    if len(b) != M.rows:
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for {M.rows} equations")
    augmented = [list(row) + [to_rational(c)] for row, c in zip(M.entries, b)]
    reduced, pivots = rref(augmented, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return tuple(x)


def signature(S: Mat) -> tuple[int, int, int]:
    """
    (positive, negative, zero) counts of a symmetric matrix, read off from a
    diagonalization by symmetric Gaussian congruence.
    """
    if not S.is_symmetric():
        raise NonSymmetricError("signature requires a symmetric matrix")
    n = S.rows
    a = [list(row) for row in S.entries]
    p = q = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # x_i -> x_i + x_j turns the hyperbolic pair into a nonzero diagonal entry
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        if d > 0:
            p += 1
        else:
            q += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
    return (p, q, n - p - q)


MAX_DEGREE = 3
ALPHA, BETA, GAMMA = SYMBOLS = sp.symbols("alpha beta gamma")
Monomial = tuple[int, int, int]


def to_sympy(value: Scalar) -> sp.Rational:
    value = to_rational(value)
    return sp.Rational(value.numerator, value.denominator)


def from_sympy(value: sp.Expr) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


class HomCubicPoly3:
    """
    Homogeneous polynomial of degree at most 3 in alpha, beta, gamma over QQ,
    held as a ``sympy.Poly``. The zero polynomial is compatible with every degree.
    """

    __slots__ = ("degree", "poly", "_terms")

    def __init__(self, degree: int, terms: dict[Monomial, Scalar] | None = None) -> None:
        if not 0 <= degree <= MAX_DEGREE:
            raise DegreeOverflowError(f"degree {degree} exceeds the supported degree {MAX_DEGREE}")
        for mono in terms or {}:
            if len(mono) != 3 or sum(mono) != degree or min(mono) < 0:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
        rep = {tuple(mono): to_sympy(c) for mono, c in (terms or {}).items()}
        self._set(degree, sp.Poly.from_dict(rep or {(0, 0, 0): 0}, *SYMBOLS, domain=sp.QQ))

    def _set(self, degree: int, poly: sp.Poly) -> None:
        self.degree = degree
        self.poly = poly
        self._terms = {} if poly.is_zero else {mono: from_sympy(c) for mono, c in poly.terms()}

    @classmethod
    def from_poly(cls, poly: sp.Poly, degree: int | None = None) -> HomCubicPoly3:
        result = cls.__new__(cls)
        if poly.is_zero:
            result._set(degree or 0, poly)
            return result
        if not poly.is_homogeneous:
            raise ValueError(f"{poly.as_expr()} is not homogeneous")
        total = poly.total_degree()
        if total > MAX_DEGREE:
            raise DegreeOverflowError(f"product has degree {total} > {MAX_DEGREE}")
        result._set(total, poly)
        return result

    @classmethod
    def from_expr(cls, expr: sp.Expr) -> HomCubicPoly3:
        return cls.from_poly(sp.Poly(expr, *SYMBOLS, domain=sp.QQ))

    @classmethod
    def zero(cls) -> HomCubicPoly3:
        return cls(0)

    @classmethod
    def constant(cls, value: Scalar) -> HomCubicPoly3:
        return cls(0, {(0, 0, 0): value})

    @classmethod
    def variable(cls, index: int, coefficient: Scalar = 1) -> HomCubicPoly3:
        return cls.from_expr(to_sympy(coefficient) * SYMBOLS[index])

    @classmethod
    def linear(cls, a: Scalar, b: Scalar, c: Scalar) -> HomCubicPoly3:
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @staticmethod
    def monomials(degree: int) -> list[Monomial]:
        return [(i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)]

    @staticmethod
    def interpolation_points(degree: int) -> list[tuple[int, int, int]]:
        """
        The principal lattice {(i, j, k) : i + j + k = degree}; a homogeneous
        polynomial of that degree vanishing on it is zero.
        """
        return HomCubicPoly3.monomials(degree)

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def as_expr(self) -> sp.Expr:
        return self.poly.as_expr()

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __add__(self, other: HomCubicPoly3) -> HomCubicPoly3:
        if not isinstance(other, HomCubicPoly3):
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError(f"cannot add homogeneous polynomials of degree {self.degree} and {other.degree}")
        return HomCubicPoly3.from_poly(self.poly + other.poly, self.degree)

    def __neg__(self) -> HomCubicPoly3:
        return HomCubicPoly3.from_poly(-self.poly, self.degree)

    def __sub__(self, other: HomCubicPoly3) -> HomCubicPoly3:
        return self + (-other)

    def __mul__(self, other: Union[HomCubicPoly3, Scalar]) -> HomCubicPoly3:
        if not isinstance(other, HomCubicPoly3):
            return HomCubicPoly3.from_poly(self.poly * to_sympy(other), self.degree)
        if self.is_zero() or other.is_zero():
            return HomCubicPoly3.zero()
        if self.degree + other.degree > MAX_DEGREE:
            raise DegreeOverflowError(f"product has degree {self.degree + other.degree} > {MAX_DEGREE}")
        return HomCubicPoly3.from_poly(self.poly * other.poly)

    __rmul__ = __mul__

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        return from_sympy(self.as_expr().subs(dict(zip(SYMBOLS, (to_sympy(x) for x in point)))))

    def vanishes_on_interpolation_grid(self) -> bool:
        return all(self.evaluate(p) == 0 for p in self.interpolation_points(self.degree))

    def divisible_by(self, index: int) -> bool:
        """
        True when the variable with the given index divides the polynomial.
        """
        _, remainder = sp.div(self.poly, sp.Poly(SYMBOLS[index], *SYMBOLS, domain=sp.QQ))
        return remainder.is_zero

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def support(self) -> set[int]:
        return {i for i, symbol in enumerate(SYMBOLS) if symbol in self.as_expr().free_symbols}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomCubicPoly3):
            return NotImplemented
        return self._terms == other._terms and (self.is_zero() or self.degree == other.degree)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self) -> str:
        return str(self.as_expr())


PolyMat = sp.Matrix
PolyVector = tuple[HomCubicPoly3, ...]


def pencil(matrices: Sequence[Mat]) -> PolyMat:
    """
    The symbolic matrix alpha*Q1 + beta*Q2 + gamma*Q3 for up to three matrices.
    """
    if not 1 <= len(matrices) <= 3:
        raise ValueError("a pencil takes between one and three matrices")
    shape = matrices[0].shape
    for Q in matrices:
        if Q.shape != shape:
            raise DimensionMismatchError(f"pencil members have shapes {shape} and {Q.shape}")
    return sum((Q.to_sympy() * s for Q, s in zip(matrices, SYMBOLS)), sp.zeros(*shape))


def poly_matrix(rows: Sequence[Sequence[HomCubicPoly3]]) -> PolyMat:
    return sp.Matrix([[p.as_expr() for p in row] for row in rows])


def poly_column(Q: PolyMat, j: int) -> PolyVector:
    return tuple(HomCubicPoly3.from_expr(e) for e in Q.col(j))


def evaluate_poly_matrix(M: PolyMat, point: Sequence[Scalar]) -> Mat:
    values = M.subs(dict(zip(SYMBOLS, (to_sympy(x) for x in point))))
    return Mat(((from_sympy(e) for e in values.row(i)) for i in range(values.rows)), cols=values.cols)


def _as_poly_matrix(M: PolyMat | Sequence[Sequence[HomCubicPoly3]]) -> PolyMat:
    return M if isinstance(M, sp.MatrixBase) else poly_matrix(M)


def poly_determinant(M: PolyMat | Sequence[Sequence[HomCubicPoly3]]) -> HomCubicPoly3:
    """
    Division-free Berkowitz determinant, read back as a polynomial over QQ.
    """
    M = _as_poly_matrix(M)
    return HomCubicPoly3.from_expr(M.det(method="berkowitz"))


def iter_minors(M: PolyMat | Sequence[Sequence[HomCubicPoly3]], k: int) -> Iterator[HomCubicPoly3]:
    """
    The k x k minors of a symbolic matrix, rows and columns in lexicographic order.
    Submatrices with a zero row or column give the zero polynomial without expansion.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"minors of order {k} are not supported")
    M = _as_poly_matrix(M)
    zero_rows = {i for i in range(M.rows) if all(e == 0 for e in M.row(i))}
    zero_cols = {j for j in range(M.cols) if all(e == 0 for e in M.col(j))}
    for row_set in itertools.combinations(range(M.rows), k):
        for col_set in itertools.combinations(range(M.cols), k):
            if zero_rows.intersection(row_set) or zero_cols.intersection(col_set):
                yield HomCubicPoly3.zero()
            else:
                yield poly_determinant(M.extract(list(row_set), list(col_set)))


def minors(M: PolyMat | Sequence[Sequence[HomCubicPoly3]], k: int) -> list[HomCubicPoly3]:
    result = list(iter_minors(M, k))
    logging.debug(f"expanded {len(result)} minors of order {k}")
    return result


def vanishing_minors(M: PolyMat | Sequence[Sequence[HomCubicPoly3]], k: int) -> bool:
    """
    True when every k x k minor vanishes identically; stops at the first nonzero one.
    """
    return all(p.is_zero() for p in iter_minors(M, k))
