from fractions import Fraction

import pytest

from g2check.modules.algebra_file import (
    AlgebraFileError,
    parse_algebra_file,
    parse_rational,
    read_algebra_file,
    serialize_algebra,
)
from g2check.modules.catalog import make_nII, seven_dim_candidates
from g2check.modules.exact_linalg import DegenerateFormError
from g2check.modules.lie_algebra import InvarianceError, JacobiError

HEISENBERG_PLUS_LINE = """
name = "heisenberg"
dim = 4
basis = ["x", "y", "z", "t"]

[[brackets]]
x = "x"
y = "y"
value = { z = "1" }

[[metric]]
x = "x"
y = "y"
value = "1"
"""

NII_HEADER = """
name = "broken"
dim = 6
basis = ["a1", "a2", "a3", "z1", "z2", "z3"]
"""

NII_METRIC = "".join(
    f'\n[[metric]]\nx = "a{i}"\ny = "z{i}"\nvalue = "1"\n' for i in range(1, 4)
)


def bracket(x: str, y: str, target: str, value: str = "1") -> str:
    return f'\n[[brackets]]\nx = "{x}"\ny = "{y}"\nvalue = {{ {target} = "{value}" }}\n'


def test_parse_rational() -> None:
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(7) == 7
    for bad in (0.5, "1/0", "x", True):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_parse_nII() -> None:
    document = NII_HEADER + bracket("a1", "a2", "z3") + bracket("a2", "a3", "z1") + bracket("a3", "a1", "z2") + NII_METRIC
    M = parse_algebra_file(document)
    assert M == make_nII()


def test_round_trip_catalog() -> None:
    for entry in seven_dim_candidates():
        assert parse_algebra_file(serialize_algebra(entry.value, entry.label)) == entry.value


def test_degenerate_metric() -> None:
    # the form misses z and t
    with pytest.raises(DegenerateFormError):
        parse_algebra_file(HEISENBERG_PLUS_LINE)


def test_jacobi_error() -> None:
    document = (
        NII_HEADER
        + bracket("a1", "a2", "z3")
        + bracket("a2", "a3", "z1")
        + bracket("a3", "a1", "z2")
        + bracket("a1", "z1", "z2")
        + NII_METRIC
    )
    with pytest.raises(JacobiError) as err:
        parse_algebra_file(document)
    assert err.value.witness == ("a1", "a2", "a3")


def test_invariance_error() -> None:
    with pytest.raises(InvarianceError) as err:
        parse_algebra_file(NII_HEADER + bracket("a1", "a2", "z3") + NII_METRIC)
    assert err.value.witness == ("a1", "a2", "a3")
    assert err.value.residual == 1


def test_file_errors_carry_positions() -> None:
    with pytest.raises(AlgebraFileError) as err:
        parse_algebra_file('name = "x"\nbasis = [\n')
    assert err.value.line is not None

    with pytest.raises(AlgebraFileError) as err:
        parse_algebra_file(NII_HEADER + bracket("a1", "q", "z3") + NII_METRIC)
    assert "unknown basis label 'q'" in str(err.value)
    assert err.value.line == 8

    with pytest.raises(AlgebraFileError):
        parse_algebra_file(NII_HEADER.replace("dim = 6", "dim = 5"))
    with pytest.raises(AlgebraFileError):
        parse_algebra_file(NII_HEADER + bracket("a1", "a2", "z3", "1.5") + NII_METRIC)
    with pytest.raises(AlgebraFileError):
        parse_algebra_file(NII_HEADER + bracket("a1", "a2", "z3") + bracket("a2", "a1", "z3") + NII_METRIC)


def test_read_algebra_file(tmp_path) -> None:
    path = tmp_path / "nII.toml"
    path.write_text(serialize_algebra(make_nII(), "nII"))
    name, M = read_algebra_file(str(path))
    assert name == "nII"
    assert M.signature == (3, 3)


def test_abelian_file() -> None:
    document = 'name = "R3"\nbasis = ["e1", "e2", "e3"]\n' + "".join(
        f'\n[[metric]]\nx = "e{i}"\ny = "e{i}"\nvalue = "{v}"\n' for i, v in ((1, 1), (2, 1), (3, -1))
    )
    M = parse_algebra_file(document)
    assert not M.algebra.structure
    assert M.signature == (2, 1)
