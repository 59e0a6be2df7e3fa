"""Sparse multivariate polynomials with exact rational coefficients.

Variables are any hashable objects exposing a ``sort_key`` tuple and a
``__str__`` (see :class:`~crnobstruct.network.RateVariable` and
:class:`Symbol`). Monomials are ordered graded-lexicographically, with the
variable of smallest ``sort_key`` ranked highest; that order fixes the
canonical text rendering used in golden files.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Hashable, Iterable, Mapping, Optional

from .network import natural_key

__all__ = [
    "Symbol",
    "Monomial",
    "MultiPoly",
    "UnassignedVariable",
    "TermLimitExceeded",
    "evaluate",
    "exact_divide",
    "monomial_content",
]


class UnassignedVariable(KeyError):
    pass


class TermLimitExceeded(RuntimeError):
    """A symbolic computation produced more terms than the configured cap."""


@dataclass(frozen=True)
class Symbol:
    """A named indeterminate, e.g. ``Symbol("k[1]")`` or ``Symbol("x[A]")``."""

    name: str

    @property
    def sort_key(self):
        return (1, natural_key(self.name))

    def __str__(self):
        return self.name


@total_ordering
class _Reversed:
    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __eq__(self, other):
        return self.key == other.key

    def __lt__(self, other):
        return other.key < self.key


class Monomial:
    """Product of variables with positive integer exponents (immutable)."""

    __slots__ = ("_items", "_hash", "_key")

    def __init__(self, powers: Mapping[Hashable, int] | Iterable[tuple[Hashable, int]] = ()):
        items = powers.items() if isinstance(powers, Mapping) else powers
        merged: dict = {}
        for v, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                merged[v] = merged.get(v, 0) + e
        self._items = tuple(sorted(merged.items(), key=lambda ve: ve[0].sort_key))
        self._hash = hash(self._items)
        self._key = None

    @classmethod
    def _from_sorted(cls, items: tuple) -> "Monomial":
        m = cls.__new__(cls)
        m._items = items
        m._hash = hash(items)
        m._key = None
        return m

    @property
    def items(self) -> tuple:
        return self._items

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    @property
    def variables(self) -> tuple:
        return tuple(v for v, _ in self._items)

    def exponent(self, var) -> int:
        for v, e in self._items:
            if v == var:
                return e
        return 0

    def order_key(self):
        """Key that sorts monomials ascending in graded-lex order."""
        if self._key is None:
            self._key = (
                self.degree,
                tuple((_Reversed(v.sort_key), e) for v, e in self._items),
            )
        return self._key

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other._items:
            return self
        if not self._items:
            return other
        merged = dict(self._items)
        for v, e in other._items:
            merged[v] = merged.get(v, 0) + e
        return Monomial(merged)

    def divides(self, other: "Monomial") -> bool:
        theirs = dict(other._items)
        return all(theirs.get(v, 0) >= e for v, e in self._items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        mine = dict(self._items)
        for v, e in other._items:
            left = mine.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            if left:
                mine[v] = left
            else:
                del mine[v]
        return Monomial(mine)

    def gcd(self, other: "Monomial") -> "Monomial":
        theirs = dict(other._items)
        return Monomial({v: min(e, theirs[v]) for v, e in self._items if v in theirs})

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.order_key() < other.order_key()

    def __bool__(self):
        return bool(self._items)

    def __str__(self):
        if not self._items:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self._items)

    def __repr__(self):
        return f"Monomial({self})"


ONE = Monomial()


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class MultiPoly:
    """Immutable sparse polynomial: ``{Monomial: nonzero Fraction}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._wrap({})

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        c = _coerce(c)
        return cls._wrap({ONE: c} if c else {})

    @classmethod
    def var(cls, v, coeff=1) -> "MultiPoly":
        c = _coerce(coeff)
        return cls._wrap({Monomial({v: 1}): c} if c else {})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1) -> "MultiPoly":
        return cls({m: coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Read-only view would be nicer; do not mutate."""
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda mc: mc[0].order_key(), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda mc: mc[0].order_key())

    def variables(self) -> list:
        vs = {v for m in self._terms for v in m.variables}
        return sorted(vs, key=lambda v: v.sort_key)

    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=-1)

    def degree_in(self, var) -> int:
        return max((m.exponent(var) for m in self._terms), default=-1)

    def coefficients(self) -> list[Fraction]:
        return list(self._terms.values())

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other) -> "MultiPoly":
        return other if isinstance(other, MultiPoly) else MultiPoly.constant(other)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = _coerce(other)
            if not c:
                return MultiPoly.zero()
            return MultiPoly._wrap({m: k * c for m, k in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c) -> "MultiPoly":
        c = _coerce(c)
        return MultiPoly._wrap({m: k / c for m, k in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        try:
            return self == MultiPoly.constant(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation --------------------------------------------------------

    def evaluate(self, values: Mapping) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in m.items:
                try:
                    x = values[v]
                except KeyError:
                    raise UnassignedVariable(str(v)) from None
                t *= x if e == 1 else x**e
            total += t
        return total

    def substitute(self, mapping: Mapping) -> "MultiPoly":
        """Replace variables by polynomials or numbers; others stay symbolic."""
        subs = {v: (p if isinstance(p, MultiPoly) else MultiPoly.constant(p)) for v, p in mapping.items()}
        powers: dict = {}
        out = MultiPoly.zero()
        for m, c in self._terms.items():
            keep = {}
            term = MultiPoly.constant(c)
            for v, e in m.items:
                if v in subs:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = subs[v] ** e
                    term = term * powers[key]
                else:
                    keep[v] = e
            if keep:
                term = term * MultiPoly.from_monomial(Monomial(keep))
            out = out + term
        return out

    def split_linear(self, var) -> tuple["MultiPoly", "MultiPoly"]:
        """Write ``self = a * var + b`` for a polynomial of degree <= 1 in ``var``."""
        a, b = {}, {}
        for m, c in self._terms.items():
            e = m.exponent(var)
            if e == 0:
                b[m] = c
            elif e == 1:
                a[m / Monomial({var: 1})] = c
            else:
                raise ValueError(f"degree of {var} exceeds 1")
        return MultiPoly._wrap(a), MultiPoly._wrap(b)

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            body = str(abs(c)) if not m else f"{abs(c)}*{m}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


def evaluate(p: MultiPoly, inst: Mapping) -> Fraction:
    return p.evaluate(inst)


def monomial_content(p: MultiPoly) -> Monomial:
    """Greatest monomial dividing every term (``1`` for the zero polynomial)."""
    it = iter(p.terms)
    g = next(it, None)
    if g is None:
        return ONE
    for m in it:
        g = g.gcd(m)
        if not g:
            break
    return g


def exact_divide(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Return ``q`` with ``f == q * g``, or ``None`` when ``g`` does not divide ``f``.

    Repeatedly cancels the leading term of the remainder against the leading
    term of ``g``; exact division always succeeds this way because the
    leading term of a product is the product of leading terms.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = g.leading_term()
    quotient: dict = {}
    rem = f
    while rem:
        rm, rc = rem.leading_term()
        if not lm.divides(rm):
            return None
        t = MultiPoly._wrap({rm / lm: rc / lc})
        quotient[rm / lm] = rc / lc
        rem = rem - t * g
    return MultiPoly._wrap(quotient)
