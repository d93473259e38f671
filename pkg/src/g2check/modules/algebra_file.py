"""
Algebra files: a metric Lie algebra as a TOML document.

    name = "nII"
    dim = 6
    basis = ["a1", "a2", "a3", "z1", "z2", "z3"]

    [[brackets]]
    x = "a1"
    y = "a2"
    value = { z3 = "1" }

    [[metric]]
    x = "a1"
    y = "z1"
    value = "1"

Rationals are written as "p" or "p/q" strings. Unlisted brackets and metric
entries are zero; metric entries are completed symmetrically.
"""
from __future__ import annotations

import re

from fractions import Fraction
from typing import Any, Optional

import toml

from .exact_linalg import Mat
from .lie_algebra import LieAlgebra, MetricLieAlgebra

RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class AlgebraFileError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def _locate(document: str, needle: str) -> tuple[Optional[int], Optional[int]]:
    position = document.find(needle)
    if position < 0:
        return None, None
    line = document.count("\n", 0, position) + 1
    column = position - (document.rfind("\n", 0, position) + 1) + 1
    return line, column


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"{text!r} is not an exact rational")
    if isinstance(text, int):
        return Fraction(text)
    match = RATIONAL.match(str(text))
    if not match:
        raise ValueError(f"{text!r} is not of the form p or p/q")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"{text!r} has a zero denominator")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _fail(document: str, message: str, needle: str = "") -> AlgebraFileError:
    line, column = _locate(document, needle) if needle else (None, None)
    return AlgebraFileError(message, line, column)


def load_document(document: str) -> dict:
    try:
        return toml.loads(document)
    except toml.TomlDecodeError as err:
        raise AlgebraFileError(f"malformed algebra file: {err.msg}", err.lineno, err.colno)


def parse_algebra_file(document: str) -> MetricLieAlgebra:
    """
    Builds a validated metric Lie algebra. Jacobi, nondegeneracy and
    invariance failures propagate as the algebra's own errors.
    """
    data = load_document(document)
    basis = data.get("basis")
    if not isinstance(basis, list) or not all(isinstance(label, str) for label in basis):
        raise _fail(document, "basis must be a list of labels", "basis")
    if len(set(basis)) != len(basis):
        raise _fail(document, "basis labels must be unique", "basis")
    dim = data.get("dim", len(basis))
    if dim != len(basis):
        raise _fail(document, f"dim = {dim} but the basis has {len(basis)} labels", "dim")
    position = {label: i for i, label in enumerate(basis)}

    def resolve(label: Any) -> int:
        if label not in position:
            raise _fail(document, f"unknown basis label {label!r}", f'"{label}"')
        return position[label]

    def rational(value: Any) -> Fraction:
        try:
            return parse_rational(value)
        except ValueError as err:
            raise _fail(document, str(err), str(value))

    relations: dict[tuple[str, str], dict[str, Fraction]] = {}
    seen: set[tuple[int, int]] = set()
    for entry in data.get("brackets", []):
        x, y = entry.get("x"), entry.get("y")
        i, j = resolve(x), resolve(y)
        if i == j:
            raise _fail(document, f"bracket [{x}, {x}] must be zero", f'"{x}"')
        key = (min(i, j), max(i, j))
        if key in seen:
            raise _fail(document, f"bracket of {x} and {y} given twice", f'"{y}"')
        seen.add(key)
        value = entry.get("value", {})
        if not isinstance(value, dict):
            raise _fail(document, f"bracket [{x}, {y}] needs a table of coefficients", f'"{y}"')
        for label in value:
            resolve(label)
        relations[(x, y)] = {label: rational(c) for label, c in value.items()}

    rows = [[Fraction(0)] * len(basis) for _ in basis]
    filled: dict[tuple[int, int], Fraction] = {}
    for entry in data.get("metric", []):
        x, y = entry.get("x"), entry.get("y")
        i, j = resolve(x), resolve(y)
        value = rational(entry.get("value", "0"))
        key = (min(i, j), max(i, j))
        if key in filled and filled[key] != value:
            raise _fail(document, f"metric entry <{x}, {y}> given twice with different values", f'"{y}"')
        filled[key] = value
        rows[i][j] = value
        rows[j][i] = value

    algebra = LieAlgebra.from_relations(basis, relations)
    return MetricLieAlgebra(algebra, Mat(rows, cols=len(basis)))


def document_name(document: str) -> str:
    return str(load_document(document).get("name", "unnamed"))


def read_algebra_file(path: str) -> tuple[str, MetricLieAlgebra]:
    with open(path, "r") as f:
        document = f.read()
    return document_name(document), parse_algebra_file(document)


def serialize_algebra(M: MetricLieAlgebra, name: str) -> str:
    labels = M.basis_labels
    brackets = []
    for (i, j), c in sorted(M.algebra.structure.items()):
        value = {labels[k]: format_rational(ck) for k, ck in enumerate(c) if ck}
        brackets.append({"x": labels[i], "y": labels[j], "value": value})
    metric = []
    for i in range(M.dim):
        for j in range(i, M.dim):
            if M.form[i, j]:
                metric.append({"x": labels[i], "y": labels[j], "value": format_rational(M.form[i, j])})
    data: dict[str, Any] = {"name": name, "dim": M.dim, "basis": list(labels)}
    if brackets:
        data["brackets"] = brackets
    if metric:
        data["metric"] = metric
    return toml.dumps(data)
