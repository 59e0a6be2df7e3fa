"""Exact dense linear algebra over the rationals.

Matrices are lists of rows of :class:`~fractions.Fraction`. Determinant and
rank scale each row to integers and run fraction-free (Bareiss) elimination,
so every intermediate value is an exact integer minor.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]

__all__ = [
    "to_fraction_matrix",
    "identity",
    "zeros",
    "matmul",
    "transpose",
    "trace",
    "bareiss_determinant",
    "rank",
    "nullspace",
    "kernel_basis",
    "is_zero_matrix",
]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(a) for a in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def trace(a: Sequence[Sequence]) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero_matrix(a: Sequence[Sequence]) -> bool:
    return all(x == 0 for row in a for x in row)


def _integer_rows(a: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return the rows and the product of scales."""
    rows, scale = [], 1
    for row in a:
        fr = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * d) for x in fr])
        scale *= d
    return rows, scale


def bareiss_determinant(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant; the 0 x 0 determinant is 1."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    m, scale = _integer_rows(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1], scale)


def rank(a: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free elimination with full pivoting."""
    if not a or not a[0]:
        return 0
    m, _ = _integer_rows(a)
    rows, cols = len(m), len(m[0])
    r, prev = 0, 1
    while r < min(rows, cols):
        pivot_at = None
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, pivot_at = v, (i, j)
        if pivot_at is None:
            break
        pi, pj = pivot_at
        m[r], m[pi] = m[pi], m[r]
        for row in m:
            row[r], row[pj] = row[pj], row[r]
        pivot = m[r][r]
        for i in range(r + 1, rows):
            mir = m[i][r]
            for j in range(r + 1, cols):
                m[i][j] = (m[i][j] * pivot - mir * m[r][j]) // prev
            m[i][r] = 0
        prev = pivot
        r += 1
    return r


def nullspace(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel from the reduced row echelon form."""
    return kernel_basis(a)[0]


def kernel_basis(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Kernel basis together with the free columns it is indexed by.

    Basis vector ``i`` has a 1 at ``free[i]`` and 0 at every other free
    column, so a kernel vector's free entries are its coordinates.
    """
    if not a:
        return [], []
    m = to_fraction_matrix(a)
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis, free
