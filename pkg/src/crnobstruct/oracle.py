"""Exact spectral ground truth at a concrete rate instance.

Everything here works on rational matrices: the Jacobian is assembled as
``S @ R`` directly from the stoichiometry, never through the symbolic
polynomials, so it can cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import Matrix, identity, is_zero_matrix, matmul, rank, trace
from .network import Network, RateVariable, rate_variables, stoichiometric_matrix

__all__ = [
    "SpectralReport",
    "faddeev_leverrier",
    "rank_rational",
    "validate_instance",
    "jacobian_at",
    "spectral_report",
]


def faddeev_leverrier(a: Sequence[Sequence]) -> tuple[list[Fraction], Matrix]:
    """Char-poly coefficients ``a_0 .. a_{n-1}`` of ``det(x I - A)`` and ``Adj(A)``.

    >>> faddeev_leverrier([[0, 1], [0, 0]])[0]
    [Fraction(0, 1), Fraction(0, 1)]
    """
    n = len(a)
    a = [[Fraction(x) for x in row] for row in a]
    if n == 0:
        return [], []
    coeffs = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    am = m
    c = Fraction(1)
    for k in range(1, n + 1):
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        c = -trace(am) / k
        coeffs[n - k] = c
    # M_n satisfies A M_n = -c_0 I, and Adj(A) = (-1)^(n+1) M_n.
    sign = -1 if n % 2 == 0 else 1
    adj = [[sign * x for x in row] for row in m]
    return coeffs, adj


def rank_rational(a: Sequence[Sequence]) -> int:
    return rank(a)


@dataclass(frozen=True)
class SpectralReport:
    char_poly: tuple[Fraction, ...]
    algebraic_multiplicity_zero: int
    geometric_multiplicity_zero: int
    adjugate: tuple[tuple[Fraction, ...], ...]
    determinant: Fraction
    rank: int

    @property
    def size(self) -> int:
        return len(self.char_poly)

    @property
    def adjugate_trace(self) -> Fraction:
        return sum((self.adjugate[i][i] for i in range(self.size)), Fraction(0))

    @property
    def adjugate_is_zero(self) -> bool:
        return is_zero_matrix(self.adjugate)

    def to_json(self) -> dict:
        return {
            "char_poly": [str(c) for c in self.char_poly],
            "determinant": str(self.determinant),
            "adjugate_trace": str(self.adjugate_trace),
            "rank": self.rank,
            "alg_mult": self.algebraic_multiplicity_zero,
            "geom_mult": self.geometric_multiplicity_zero,
            "adjugate": [[str(x) for x in row] for row in self.adjugate],
        }


def report_for_matrix(a: Sequence[Sequence]) -> SpectralReport:
    n = len(a)
    coeffs, adj = faddeev_leverrier(a)
    alg = next((k for k, c in enumerate(coeffs) if c != 0), n)
    r = rank(a)
    det = coeffs[0] * (-1) ** n if n else Fraction(1)
    return SpectralReport(
        char_poly=tuple(coeffs),
        algebraic_multiplicity_zero=alg,
        geometric_multiplicity_zero=n - r,
        adjugate=tuple(tuple(row) for row in adj),
        determinant=det,
        rank=r,
    )


def validate_instance(net: Network, inst: Mapping[RateVariable, Fraction]) -> None:
    """Raise ``ValueError`` unless ``inst`` is total on the network's variables and positive."""
    needed = rate_variables(net)
    missing = [str(v) for v in needed if v not in inst]
    if missing:
        raise ValueError("rate instance misses " + ", ".join(missing))
    bad = [str(v) for v in needed if not inst[v] > 0]
    if bad:
        raise ValueError("rate values must be strictly positive: " + ", ".join(bad))


def jacobian_at(net: Network, inst: Mapping[RateVariable, Fraction]) -> Matrix:
    """Rational Jacobian ``S R`` with ``R[j][m] = inst[r[j,m]]`` for reactants."""
    s = stoichiometric_matrix(net)
    names = net.species_names
    r = [
        [Fraction(inst[RateVariable(rx.label, m)]) if m in rx.reactants else Fraction(0) for m in names]
        for rx in net.reactions
    ]
    return matmul(s, r)


def spectral_report(net: Network, inst: Mapping[RateVariable, Fraction]) -> SpectralReport:
    validate_instance(net, inst)
    return report_for_matrix(jacobian_at(net, inst))
