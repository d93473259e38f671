"""
The indecomposable nilpotent metric Lie algebras nI, nII, nIII, the abelian
algebras, and the complete list of their seven-dimensional completions of
index three.
"""
from __future__ import annotations

import logging

from dataclasses import dataclass
from typing import Optional

from .exact_linalg import Mat
from .lie_algebra import LieAlgebra, MetricLieAlgebra, orthogonal_direct_sum

OBSTRUCTED_ON_W = "rank-two obstruction on ad(w)"
OBSTRUCTED_TWO_STEP = "two-step obstruction on ad(n)"
OBSTRUCTED_ON_N = "rank-two obstruction on ad(n)"
FLAT_TORUS = "flat torus"


class UnknownAlgebraError(KeyError):
    pass


def _check_epsilon(epsilon: int) -> None:
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")


def _hyperbolic_form(labels: tuple[str, ...], pairs: dict[tuple[str, str], int]) -> Mat:
    n = len(labels)
    rows = [[0] * n for _ in range(n)]
    for (x, y), value in pairs.items():
        i, j = labels.index(x), labels.index(y)
        rows[i][j] = value
        rows[j][i] = value
    return Mat(rows, cols=n)


def make_nI(epsilon: int) -> MetricLieAlgebra:
    _check_epsilon(epsilon)
    labels = ("a1", "a2", "w1", "w2", "w3", "z1", "z2")
    algebra = LieAlgebra.from_relations(
        labels,
        {
            ("a1", "a2"): {"w1": 1},
            ("a1", "w1"): {"w2": 1},
            ("a1", "w2"): {"w3": -epsilon},
            ("a1", "w3"): {"z2": -1},
            ("a2", "w3"): {"z1": 1},
            ("w1", "w2"): {"z1": epsilon},
        },
    )
    form = _hyperbolic_form(labels, {("a1", "z1"): 1, ("a2", "z2"): 1, ("w1", "w3"): 1, ("w2", "w2"): epsilon})
    return MetricLieAlgebra(algebra, form)


def make_nII() -> MetricLieAlgebra:
    labels = ("a1", "a2", "a3", "z1", "z2", "z3")
    algebra = LieAlgebra.from_relations(
        labels,
        {
            ("a1", "a2"): {"z3": 1},
            ("a2", "a3"): {"z1": 1},
            ("a3", "a1"): {"z2": 1},
        },
    )
    form = _hyperbolic_form(labels, {("a1", "z1"): 1, ("a2", "z2"): 1, ("a3", "z3"): 1})
    return MetricLieAlgebra(algebra, form)


def make_nIII(epsilon: int) -> MetricLieAlgebra:
    _check_epsilon(epsilon)
    labels = ("a1", "a2", "w", "z1", "z2")
    algebra = LieAlgebra.from_relations(
        labels,
        {
            ("a1", "a2"): {"w": 1},
            ("a1", "w"): {"z2": -epsilon},
            ("a2", "w"): {"z1": epsilon},
        },
    )
    form = _hyperbolic_form(labels, {("a1", "z1"): 1, ("a2", "z2"): 1, ("w", "w"): epsilon})
    return MetricLieAlgebra(algebra, form)


def make_abelian(p: int, q: int, prefix: str = "e") -> MetricLieAlgebra:
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError(f"abelian algebra needs p + q >= 1, got ({p}, {q})")
    labels = tuple(f"{prefix}{i + 1}" for i in range(p + q))
    return MetricLieAlgebra(LieAlgebra(labels), Mat.diagonal([1] * p + [-1] * q))


def normalize_index(M: MetricLieAlgebra) -> tuple[MetricLieAlgebra, bool]:
    """
    Flips the sign of the form when needed so that p >= q. Returns the
    algebra and whether a flip happened.
    """
    p, q = M.signature
    if p >= q:
        return M, False
    return M.flipped(), True


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    epsilon: Optional[int]
    padding: tuple[int, int]
    value: MetricLieAlgebra
    label: str
    disposed_by: str
    flipped: bool = False

    @property
    def is_abelian(self) -> bool:
        return self.name == "abelian"


def _sign(epsilon: int) -> str:
    return "+1" if epsilon > 0 else "-1"


def _completion(
    name: str, base: MetricLieAlgebra, epsilon: Optional[int], padding: tuple[int, int], label: str, disposed_by: str
) -> CatalogEntry:
    value = base
    if sum(padding) > 0:
        value = orthogonal_direct_sum(base, make_abelian(*padding, prefix="t"))
    value, flipped = normalize_index(value)
    if value.dim != 7 or value.signature != (4, 3):
        raise ValueError(f"{label} has dimension {value.dim} and signature {value.signature}")
    return CatalogEntry(name, epsilon, padding, value, label, disposed_by, flipped)


def seven_dim_candidates() -> list[CatalogEntry]:
    """
    Every seven-dimensional nilpotent metric Lie algebra of index three, up
    to isomorphism, in a fixed order; abelian last.
    """
    entries = []
    for epsilon in (1, -1):
        entries.append(_completion("nI", make_nI(epsilon), epsilon, (0, 0), f"nI({_sign(epsilon)})", OBSTRUCTED_ON_W))
    entries.append(_completion("nII", make_nII(), None, (0, 1), "nII+R", OBSTRUCTED_TWO_STEP))
    entries.append(_completion("nIII", make_nIII(1), 1, (1, 1), "nIII(+1)+R2", OBSTRUCTED_ON_N))
    entries.append(_completion("nIII", make_nIII(-1), -1, (2, 0), "nIII(-1)+R2", OBSTRUCTED_ON_N))
    entries.append(CatalogEntry("abelian", None, (0, 0), make_abelian(4, 3), "abelian", FLAT_TORUS))
    logging.debug(f"catalog holds {len(entries)} seven-dimensional candidates")
    return entries


def lookup(name: str, epsilon: Optional[int] = None) -> MetricLieAlgebra:
    """
    Resolves a base name (``nI``, ``nII``, ``nIII``, ``abelian``) or a
    candidate label such as ``nIII(-1)+R2``.
    """
    for entry in seven_dim_candidates():
        if entry.label == name:
            return entry.value
    if name == "nI":
        return make_nI(1 if epsilon is None else epsilon)
    if name == "nII":
        return make_nII()
    if name == "nIII":
        return make_nIII(1 if epsilon is None else epsilon)
    if name == "abelian":
        return make_abelian(4, 3)
    raise UnknownAlgebraError(f"unknown catalog algebra {name!r}")
