"""Tests for the exact integer linear algebra helpers."""

from __future__ import annotations

from fractions import Fraction

import pytest

from fanograph.utils.linalg import determinant, solve_integral, solve_rational


@pytest.mark.parametrize(
    ("matrix", "expected"),
    [
        pytest.param([], 1, id="empty"),
        pytest.param([[5]], 5, id="scalar"),
        pytest.param([[2, 1], [1, 1]], 1, id="unimodular"),
        pytest.param([[0, 1], [1, 0]], -1, id="needs-row-swap"),
        pytest.param([[1, 2], [2, 4]], 0, id="singular"),
        pytest.param([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], 4, id="cartan-a3"),
        pytest.param([[0, 0, 1], [0, 1, 0], [1, 0, 0]], -1, id="anti-diagonal"),
        pytest.param([[1, 0, 0], [0, 0, 0], [0, 0, 1]], 0, id="zero-row"),
    ],
)
def test_determinant(matrix: list[list[int]], expected: int) -> None:
    """Test exact determinants, including pivoting and singular inputs."""
    assert determinant(matrix) == expected


def test_solve_rational() -> None:
    """Test a diagonal system with a fractional solution."""
    assert solve_rational([[2, 0], [0, 3]], [1, 1]) == (Fraction(1, 2), Fraction(1, 3))


def test_solve_integral_with_pivoting() -> None:
    """Test an integral system whose first pivot is zero."""
    assert solve_integral([[0, 1], [1, 1]], [1, 3]) == (2, 1)


def test_solve_integral_unimodular_three_by_three() -> None:
    """Test a unimodular system against a known solution."""
    matrix = [[1, 0, -1], [0, 1, -1], [0, 0, -1]]
    solution = (2, -3, 4)
    rhs = [sum(row[j] * solution[j] for j in range(3)) for row in matrix]

    assert solve_integral(matrix, rhs) == solution


@pytest.mark.parametrize(
    ("matrix", "rhs"),
    [
        pytest.param([[2, 0], [0, 1]], [1, 1], id="not-integral"),
        pytest.param([[1, 2], [2, 4]], [1, 1], id="singular"),
        pytest.param([[1, 0], [0, 1]], [1], id="shape-mismatch"),
    ],
)
def test_solve_integral_rejects(matrix: list[list[int]], rhs: list[int]) -> None:
    """Test that unsolvable or non-integral systems raise ``ValueError``."""
    with pytest.raises(ValueError):  # noqa: PT011
        solve_integral(matrix, rhs)
