"""Determinants of small matrices with jet entries"""

import logging
from typing import List, Sequence

from src.errors import DivisionBySingular
from src.jet import SINGULAR_FLOOR, Jet, div

logger = logging.getLogger(__name__)

# Largest size expanded by cofactors; bigger matrices use fraction-free elimination.
COFACTOR_MAX = 4

JetMatrix = Sequence[Sequence[Jet]]


def determinant(matrix: JetMatrix) -> Jet:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a nonempty square matrix")
    if n <= COFACTOR_MAX:
        return cofactor_determinant(matrix)
    try:
        return bareiss_determinant(matrix)
    except DivisionBySingular as e:
        logger.debug(f"Elimination hit a singular pivot ({e}); expanding by cofactors")
        return cofactor_determinant(matrix)


def cofactor_determinant(matrix: JetMatrix) -> Jet:
    """Laplace expansion along the first row"""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = None
    for j in range(n):
        minor = [list(row[:j]) + list(row[j + 1 :]) for row in matrix[1:]]
        term = matrix[0][j] * cofactor_determinant(minor)
        if total is None:
            total = term
        elif j % 2:
            total = total - term
        else:
            total = total + term
    return total


def bareiss_determinant(matrix: JetMatrix) -> Jet:
    """Fraction-free Gaussian elimination with row pivoting on the jet values"""
    a: List[List[Jet]] = [list(row) for row in matrix]
    n = len(a)
    negate = False
    previous = None
    for k in range(n - 1):
        pivot_row = max(range(k, n), key=lambda r: abs(a[r][k].value))
        scale = max(abs(a[r][c].value) for r in range(k, n) for c in range(k, n))
        if abs(a[pivot_row][k].value) <= SINGULAR_FLOOR * scale:
            raise DivisionBySingular(f"No usable pivot in column {k}")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            negate = not negate
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = numerator if previous is None else div(numerator, previous)
        previous = pivot
    result = a[n - 1][n - 1]
    return -result if negate else result
