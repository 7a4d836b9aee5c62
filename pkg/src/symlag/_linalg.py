"""Small dense exact linear algebra: Bareiss determinants, rational solves.

All "exact" routines take Fraction/int entries and never touch floats; the
single float routine is the pivoted-elimination determinant used by the
floating Vandermonde path.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm, sqrt
from typing import Sequence

from .errors import SingularMatrixError

Matrix = Sequence[Sequence[Fraction | int]]


def bareiss_determinant(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss elimination).

    Every intermediate division is exact, so values stay integers and only
    grow as minors do.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _cleared(rows: Matrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns (int matrix, product of scalings)."""
    out = []
    scale = Fraction(1)
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = lcm(*(f.denominator for f in fr)) if fr else 1
        scale *= mult
        out.append([int(f * mult) for f in fr])
    return out, scale


def exact_determinant(rows: Matrix) -> Fraction:
    """Determinant of a rational matrix via row clearing + Bareiss."""
    cleared, scale = _cleared(rows)
    return Fraction(bareiss_determinant(cleared), 1) / scale


def leading_principal_minors(rows: Matrix) -> list[Fraction]:
    """Determinants of the k x k leading blocks, k = 1..n (Sylvester data)."""
    n = len(rows)
    return [exact_determinant([row[: k + 1] for row in rows[: k + 1]]) for k in range(n)]


def solve_exact(rows: Matrix, rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve a square rational system exactly by Gaussian elimination.

    Raises SingularMatrixError when no unique solution exists; callers use
    this for matrices the theory certifies invertible.
    """
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise ValueError("solve_exact needs a square system with matching rhs")
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for k in range(n):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[pivot] = a[pivot], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for r in range(n):
            if r != k and a[r][k] != 0:
                f = a[r][k]
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
    return [a[r][n] for r in range(n)]


def exact_rank(rows: Matrix) -> int:
    """Rank of a rational matrix (any shape) by row echelon over Fractions."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    n_cols = len(a[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def float_determinant(rows: Sequence[Sequence[float]]) -> tuple[float, float]:
    """Pivoted-elimination determinant plus a scale for relative thresholds.

    Returns (det, scale) where scale is the product of row 2-norms of the
    input (Hadamard bound), so |det|/scale is a dimensionless smallness
    measure; scale 0 means a zero row.
    """
    m = [[float(x) for x in row] for row in rows]
    n = len(m)
    scale = 1.0
    for row in m:
        scale *= sqrt(sum(x * x for x in row))
    det = 1.0
    for k in range(n):
        pivot = max(range(k, n), key=lambda r: abs(m[r][k]))
        if m[pivot][k] == 0.0:
            return 0.0, scale
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            for c in range(k, n):
                m[r][c] -= f * m[k][c]
    return det, scale
