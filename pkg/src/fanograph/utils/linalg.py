"""Exact integer linear algebra for the small square systems that fans produce.

All routines use fraction-free (Bareiss) elimination: every intermediate entry is a minor of the input, so the
integer divisions are exact and no floating point is involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

IntMatrix = Sequence[Sequence[int]]


def determinant(matrix: IntMatrix) -> int:
    """Return the determinant of a square integer matrix.

    Parameters
    ----------
    matrix : IntMatrix
        Square matrix given as a sequence of rows. The empty matrix has determinant ``1``.

    Returns
    -------
    int
        The exact determinant.

    """
    size = len(matrix)
    if size == 0:
        return 1

    rows = [list(row) for row in matrix]
    sign = 1
    previous_pivot = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if rows[r][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // previous_pivot
        previous_pivot = pivot
    return sign * rows[size - 1][size - 1]


def _eliminate(matrix: IntMatrix, rhs: Sequence[int]) -> List[List[int]]:
    """Bring ``[matrix | rhs]`` to upper triangular form with Bareiss steps.

    Raises
    ------
    ValueError
        If the matrix is singular or the shapes do not match.

    """
    size = len(matrix)
    if len(rhs) != size or any(len(row) != size for row in matrix):
        msg = f"Expected a square system of size {size}, got mismatched shapes"
        raise ValueError(msg)

    augmented = [[*row, value] for row, value in zip(matrix, rhs)]
    previous_pivot = 1
    for k in range(size):
        if augmented[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if augmented[r][k] != 0), None)
            if swap is None:
                msg = "Singular matrix"
                raise ValueError(msg)
            augmented[k], augmented[swap] = augmented[swap], augmented[k]
        pivot = augmented[k][k]
        for i in range(k + 1, size):
            factor = augmented[i][k]
            for j in range(k + 1, size + 1):
                augmented[i][j] = (augmented[i][j] * pivot - factor * augmented[k][j]) // previous_pivot
            augmented[i][k] = 0
        previous_pivot = pivot
    return augmented


def solve_rational(matrix: IntMatrix, rhs: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve ``matrix @ x = rhs`` exactly over the rationals.

    Parameters
    ----------
    matrix : IntMatrix
        Nonsingular square integer matrix (rows).
    rhs : Sequence[int]
        Right-hand side.

    Returns
    -------
    tuple[Fraction, ...]
        The unique solution.

    """
    size = len(matrix)
    augmented = _eliminate(matrix, rhs)
    solution: list[Fraction] = [Fraction(0)] * size
    for i in reversed(range(size)):
        partial = augmented[i][size] - sum(augmented[i][j] * solution[j] for j in range(i + 1, size))
        solution[i] = Fraction(partial) / augmented[i][i]
    return tuple(solution)


def solve_integral(matrix: IntMatrix, rhs: Sequence[int]) -> tuple[int, ...]:
    """Solve ``matrix @ x = rhs`` and require an integer solution.

    Back substitution stays in the integers: every division must be exact, which is the case whenever the
    solution is integral (e.g. for unimodular matrices).

    Parameters
    ----------
    matrix : IntMatrix
        Nonsingular square integer matrix (rows).
    rhs : Sequence[int]
        Right-hand side.

    Returns
    -------
    tuple[int, ...]
        The unique integer solution.

    Raises
    ------
    ValueError
        If the matrix is singular or the solution is not integral.

    """
    size = len(matrix)
    augmented = _eliminate(matrix, rhs)
    solution = [0] * size
    for i in reversed(range(size)):
        partial = augmented[i][size] - sum(augmented[i][j] * solution[j] for j in range(i + 1, size))
        quotient, remainder = divmod(partial, augmented[i][i])
        if remainder:
            msg = f"Solution is not integral in coordinate {i}"
            raise ValueError(msg)
        solution[i] = quotient
    return tuple(solution)
