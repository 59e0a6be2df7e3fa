"""Exact phase-one simplex for feasibility of ``A x = b, x >= 0``.

Bland's smallest-index rule for both the entering and the leaving variable,
so the method cannot cycle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["find_feasible_point"]


def find_feasible_point(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Return a vertex ``x >= 0`` with ``A x = b``, or ``None`` if infeasible."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n

    # Tableau rows: [A | I | b] with every b_i >= 0, one artificial per row.
    tab = []
    for i, (row, bi) in enumerate(zip(a, b)):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row, bi = [-x for x in row], -bi
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [bi])
    basis = [n + i for i in range(m)]
    width = n + m

    # Reduced costs of "minimize the sum of artificials".
    cost = [-sum((tab[i][j] for i in range(m)), Fraction(0)) for j in range(n)]
    cost += [Fraction(0)] * m + [-sum((tab[i][-1] for i in range(m)), Fraction(0))]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving, best = None, None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = tab[i][-1] / tab[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            # Unbounded below cannot happen for a sum of nonnegative artificials.
            raise ArithmeticError("phase-one simplex reported unboundedness")
        piv = tab[leaving][entering]
        prow = [x / piv for x in tab[leaving]]
        tab[leaving] = prow
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [x - f * y for x, y in zip(tab[i], prow)]
        f = cost[entering]
        cost = [x - f * y for x, y in zip(cost, prow)]
        basis[leaving] = entering

    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = tab[i][-1]
    if any(x[n:]):
        return None
    return x[:n]
