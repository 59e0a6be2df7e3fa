"""Symbolic Jacobian ``G = S R`` and its determinant, adjugate and char-poly.

Entries are :class:`~crnobstruct.poly.MultiPoly` in the rate variables
``r[j,m]``. Two independent routes to ``det G`` and ``tr Adj(G)`` are
provided: cofactor expansion of the matrix, and the selection expansions
summed over (Partial) Child Selections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .network import Network, RateVariable, stoichiometric_matrix
from .poly import MultiPoly, Monomial, TermLimitExceeded
from .selections import (
    DEFAULT_MAX_NODES,
    enumerate_child_selections,
    enumerate_partial_child_selections,
)

__all__ = [
    "DEFAULT_MAX_TERMS",
    "SymMatrix",
    "sym_jacobian",
    "det_direct",
    "det_via_child_selections",
    "adjugate_symbolic",
    "adjugate_trace_via_pcs",
    "char_poly_symbolic",
]

DEFAULT_MAX_TERMS = 10**6
DEFAULT_MAX_CHARPOLY_SIZE = 8


@dataclass(frozen=True)
class SymMatrix:
    entries: tuple[tuple[MultiPoly, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymMatrix":
        return cls(tuple(
            tuple(x if isinstance(x, MultiPoly) else MultiPoly.constant(x) for x in row)
            for row in rows
        ))

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def evaluate(self, inst: Mapping) -> list[list[Fraction]]:
        return [[p.evaluate(inst) for p in row] for row in self.entries]

    def trace(self) -> MultiPoly:
        total = MultiPoly.zero()
        for i in range(self.size):
            total = total + self.entries[i][i]
        return total


def sym_jacobian(net: Network) -> SymMatrix:
    """Entry (m, n) is the sum over reactions j consuming n of ``S[m][j] * r[j,n]``."""
    s = stoichiometric_matrix(net)
    names = net.species_names
    rows = []
    for m in range(len(names)):
        row = []
        for n in names:
            entry = MultiPoly.zero()
            for j, r in enumerate(net.reactions):
                if n in r.reactants and s[m][j]:
                    entry = entry + MultiPoly.var(RateVariable(r.label, n), s[m][j])
            row.append(entry)
        rows.append(row)
    return SymMatrix.from_rows(rows)


def _check(p: MultiPoly, max_terms: int) -> MultiPoly:
    if len(p) > max_terms:
        raise TermLimitExceeded(f"{len(p)} terms exceeds the cap of {max_terms}")
    return p


def _det_sub(g: SymMatrix, rows: Sequence[int], cols: Sequence[int], max_terms: int) -> MultiPoly:
    """Cofactor expansion along successive rows, memoized on remaining columns."""
    k = len(rows)
    if k == 0:
        return MultiPoly.constant(1)
    memo: dict[tuple[int, ...], MultiPoly] = {}

    def det(depth: int, remaining: tuple[int, ...]) -> MultiPoly:
        if depth == k:
            return MultiPoly.constant(1)
        hit = memo.get(remaining)
        if hit is not None:
            return hit
        row = g.entries[rows[depth]]
        total = MultiPoly.zero()
        for pos, c in enumerate(remaining):
            a = row[c]
            if not a:
                continue
            minor = det(depth + 1, remaining[:pos] + remaining[pos + 1:])
            if not minor:
                continue
            term = a * minor
            total = total - term if pos % 2 else total + term
            _check(total, max_terms)
        memo[remaining] = total
        return total

    return det(0, tuple(cols))


def det_direct(g: SymMatrix, max_terms: int = DEFAULT_MAX_TERMS) -> MultiPoly:
    n = g.size
    return _det_sub(g, range(n), tuple(range(n)), max_terms)


def adjugate_symbolic(g: SymMatrix, max_terms: int = DEFAULT_MAX_TERMS) -> list[list[MultiPoly]]:
    """``Adj[m][n] = (-1)^(m+n) det(G without row n and column m)``."""
    n = g.size
    adj = [[MultiPoly.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = tuple(c for c in range(n) if c != i)
            minor = _det_sub(g, rows, cols, max_terms)
            adj[i][j] = -minor if (i + j) % 2 else minor
    return adj


def _selection_product(assignment) -> Monomial:
    return Monomial({RateVariable(j, m): 1 for m, j in assignment})


def det_via_child_selections(
    net: Network, max_nodes: int = DEFAULT_MAX_NODES, selections=None
) -> MultiPoly:
    """Sum over Child Selections J of ``alpha_J * prod_m r[J(m),m]``.

    Distinct selections give distinct monomials, so no two terms combine.
    """
    if selections is None:
        selections = enumerate_child_selections(net, max_nodes)
    return MultiPoly({_selection_product(cs.assignment): cs.alpha for cs in selections if cs.alpha})


def adjugate_diagonal_via_pcs(net: Network, species: str, max_nodes: int = DEFAULT_MAX_NODES) -> MultiPoly:
    pcs = enumerate_partial_child_selections(net, species, max_nodes)
    return MultiPoly({_selection_product(p.assignment): p.beta for p in pcs if p.beta})


def adjugate_trace_via_pcs(net: Network, max_nodes: int = DEFAULT_MAX_NODES) -> MultiPoly:
    total = MultiPoly.zero()
    for m in net.species_names:
        total = total + adjugate_diagonal_via_pcs(net, m, max_nodes)
    return total


def char_poly_symbolic(
    g: SymMatrix,
    max_size: int = DEFAULT_MAX_CHARPOLY_SIZE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> list[MultiPoly]:
    """Coefficients ``a_0 .. a_{M-1}`` of ``det(x I - G) = x^M + ... + a_0``.

    Faddeev-LeVerrier recursion; the only divisions are by the integers
    ``1 .. M``, which is exact over rational coefficients.
    """
    n = g.size
    if n > max_size:
        raise TermLimitExceeded(f"matrix size {n} exceeds the char-poly cap of {max_size}")
    a = [list(row) for row in g.entries]
    coeffs: list[Optional[MultiPoly]] = [None] * n
    am = [[MultiPoly.zero()] * n for _ in range(n)]
    c_prev = MultiPoly.constant(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I, then c_{n-k} = -tr(A M_k) / k
        for i in range(n):
            am[i][i] = am[i][i] + c_prev
        am = _matmul(a, am, max_terms)
        tr = MultiPoly.zero()
        for i in range(n):
            tr = tr + am[i][i]
        c_prev = _check(tr * Fraction(-1, k), max_terms)
        coeffs[n - k] = c_prev
    return coeffs


def _matmul(a, b, max_terms):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = MultiPoly.zero()
            for k in range(n):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(_check(acc, max_terms))
        out.append(row)
    return out
