"""Reaction networks: the text format, stoichiometry and rate variables.

A network file holds one reaction per line::

    network "toy"
    species A, B
    1: A + B -> 2 A
    2: 3/2 A -> 0
    f: 0 -> B        # inflow

Coefficients are exact rationals. ``0`` spells an empty side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional

__all__ = [
    "ParseError",
    "Species",
    "Reaction",
    "Network",
    "RateVariable",
    "parse_network",
    "format_network",
    "load_network",
    "stoichiometric_matrix",
    "rate_variables",
    "parse_rate_variable",
    "positive_kernel_vector",
    "natural_key",
]

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_LABEL = r"[A-Za-z0-9_]+"
_NUMBER = r"[+-]?\d+(?:\s*/\s*[+-]?\d+)?"

_HEADER_NETWORK = re.compile(r'^network\s+"([^"]*)"\s*$')
_HEADER_SPECIES = re.compile(r"^species\b(.*)$")
_REACTION = re.compile(rf"^({_LABEL})\s*:(.*)$")
_TERM = re.compile(rf"^({_NUMBER})?\s*({_IDENT})$")


def natural_key(text: str) -> tuple:
    """Sort key comparing digit runs numerically, so ``"2" < "10"``."""
    parts = re.split(r"(\d+)", text)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


class ParseError(ValueError):
    """Malformed network text. Carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Species:
    index: int
    name: str


@dataclass(frozen=True)
class Reaction:
    """An irreversible reaction ``label: reactants -> products``.

    Both sides map species names to strictly positive coefficients; a species
    absent from a side has coefficient zero there.
    """

    label: str
    reactants: Mapping[str, Fraction] = field(default_factory=dict)
    products: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for side in (self.reactants, self.products):
            for name, coeff in side.items():
                if coeff <= 0:
                    raise ValueError(
                        f"reaction {self.label}: coefficient of {name} must be positive"
                    )
        object.__setattr__(self, "reactants", dict(self.reactants))
        object.__setattr__(self, "products", dict(self.products))

    @property
    def is_inflow(self) -> bool:
        return not self.reactants

    @property
    def is_outflow(self) -> bool:
        return not self.products


@dataclass(frozen=True)
class Network:
    species: tuple[Species, ...]
    reactions: tuple[Reaction, ...]
    name: Optional[str] = None

    def __post_init__(self):
        species = tuple(self.species)
        reactions = tuple(self.reactions)
        object.__setattr__(self, "species", species)
        object.__setattr__(self, "reactions", reactions)
        if not species:
            raise ValueError("a network needs at least one species")
        if not reactions:
            raise ValueError("a network needs at least one reaction")
        names = [s.name for s in species]
        if len(set(names)) != len(names):
            raise ValueError("duplicate species name")
        if [s.index for s in species] != list(range(len(species))):
            raise ValueError("species indices must be contiguous from 0")
        labels = [r.label for r in reactions]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate reaction label")
        known = set(names)
        for r in reactions:
            for name in (*r.reactants, *r.products):
                if name not in known:
                    raise ValueError(f"reaction {r.label}: undeclared species {name}")

    @classmethod
    def build(cls, species: Iterable[str], reactions: Iterable[Reaction], name=None):
        return cls(tuple(Species(i, s) for i, s in enumerate(species)), tuple(reactions), name)

    @property
    def species_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.species)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.reactions)

    @property
    def n_species(self) -> int:
        return len(self.species)

    @property
    def n_reactions(self) -> int:
        return len(self.reactions)

    def species_index(self, name: str) -> int:
        for s in self.species:
            if s.name == name:
                return s.index
        raise KeyError(f"unknown species {name!r}")

    def reaction(self, label: str) -> Reaction:
        for r in self.reactions:
            if r.label == label:
                return r
        raise KeyError(f"unknown reaction {label!r}")

    def consumers(self, species: str) -> tuple[str, ...]:
        """Labels of reactions having ``species`` as a reactant, in reaction order."""
        return tuple(r.label for r in self.reactions if species in r.reactants)

    def __str__(self):
        return format_network(self)


class RateVariable(NamedTuple):
    """Symbolic partial derivative of the rate of ``reaction`` in ``species``."""

    reaction: str
    species: str

    @property
    def sort_key(self):
        return (0, natural_key(self.reaction), natural_key(self.species))

    def __str__(self):
        return f"r[{self.reaction},{self.species}]"


_RATE_VAR = re.compile(rf"^r\[\s*({_LABEL})\s*,\s*({_IDENT})\s*\]$")


def parse_rate_variable(text: str) -> RateVariable:
    m = _RATE_VAR.match(text.strip())
    if not m:
        raise ValueError(f"not a rate variable: {text!r}")
    return RateVariable(m.group(1), m.group(2))


# -- parsing -----------------------------------------------------------------


def _parse_fraction(text: str, line: int, column: int) -> Fraction:
    try:
        value = Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {text!r}", line, column) from None
    if value <= 0:
        raise ParseError(f"coefficient must be positive, got {text.strip()}", line, column)
    return value


def _parse_side(text: str, line: int, column: int) -> dict[str, Fraction]:
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty reaction side (write 0 for nothing)", line, column)
    if stripped == "0":
        return {}
    side: dict[str, Fraction] = {}
    offset = column
    for chunk in text.split("+"):
        lead = len(chunk) - len(chunk.lstrip())
        term = chunk.strip()
        pos = offset + lead
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"bad term {term!r}", line, pos)
        coeff = _parse_fraction(m.group(1), line, pos) if m.group(1) else Fraction(1)
        side[m.group(2)] = side.get(m.group(2), Fraction(0)) + coeff
        offset += len(chunk) + 1
    return side


def parse_network(text: str) -> Network:
    """Parse network text into a :class:`Network`.

    Species follow the ``species`` header when one is given, otherwise their
    first appearance. Reactions keep file order.
    """
    name = None
    declared: Optional[list[str]] = None
    seen: list[str] = []
    reactions: list[Reaction] = []
    labels: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()

        if m := _HEADER_NETWORK.match(body):
            name = m.group(1)
            continue
        if (m := _HEADER_SPECIES.match(body)) and ":" not in body:
            if declared is not None:
                raise ParseError("species declared twice", lineno, indent + 1)
            declared = [s.strip() for s in m.group(1).replace(",", " ").split()]
            for s in declared:
                if not re.fullmatch(_IDENT, s):
                    raise ParseError(f"bad species name {s!r}", lineno, indent + 1)
            if len(set(declared)) != len(declared):
                raise ParseError("duplicate species in declaration", lineno, indent + 1)
            if seen:
                raise ParseError("species header must precede reactions", lineno, indent + 1)
            continue

        m = _REACTION.match(body)
        if not m:
            raise ParseError("expected 'label: reactants -> products'", lineno, indent + 1)
        label, rest = m.group(1), m.group(2)
        if label in labels:
            raise ParseError(f"duplicate reaction label {label!r}", lineno, indent + 1)
        rest_col = indent + m.start(2) + 1
        if rest.count("->") != 1:
            raise ParseError("expected exactly one '->'", lineno, rest_col)
        lhs, rhs = rest.split("->")
        reactants = _parse_side(lhs, lineno, rest_col)
        products = _parse_side(rhs, lineno, rest_col + len(lhs) + 2)
        for s in (*reactants, *products):
            if declared is not None and s not in declared:
                raise ParseError(f"undeclared species {s!r}", lineno, indent + 1)
            if s not in seen:
                seen.append(s)
        labels.add(label)
        reactions.append(Reaction(label, reactants, products))

    if not reactions:
        raise ParseError("no reactions", max(1, len(text.splitlines())), 1)
    return Network.build(declared if declared is not None else seen, reactions, name)


def load_network(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


def _format_side(side: Mapping[str, Fraction], order: list[str]) -> str:
    if not side:
        return "0"
    terms = []
    for s in order:
        if s in side:
            c = side[s]
            terms.append(s if c == 1 else f"{c} {s}")
    return " + ".join(terms)


def format_network(net: Network) -> str:
    """Render ``net`` in the text format; :func:`parse_network` inverts this."""
    order = list(net.species_names)
    lines = []
    if net.name is not None:
        lines.append(f'network "{net.name}"')
    lines.append("species " + ", ".join(order))
    for r in net.reactions:
        lines.append(f"{r.label}: {_format_side(r.reactants, order)} -> {_format_side(r.products, order)}")
    return "\n".join(lines) + "\n"


# -- structure ---------------------------------------------------------------


def stoichiometric_matrix(net: Network) -> list[list[Fraction]]:
    """M x E matrix with entry (m, j) = product coeff - reactant coeff."""
    zero = Fraction(0)
    return [
        [r.products.get(s, zero) - r.reactants.get(s, zero) for r in net.reactions]
        for s in net.species_names
    ]


def rate_variables(net: Network) -> list[RateVariable]:
    """One variable per (reaction, reactant) pair, reaction order then species order."""
    names = net.species_names
    return [
        RateVariable(r.label, s)
        for r in net.reactions
        for s in names
        if s in r.reactants
    ]


def positive_kernel_vector(net: Network) -> Optional[list[Fraction]]:
    """A rate vector ``v`` with ``S v = 0`` and every ``v_j >= 1``, if one exists.

    Kernel vectors scale, so a strictly positive one exists exactly when the
    closed problem with lower bound 1 is feasible. Writing ``v = 1 + u`` turns
    that into ``S u = -S 1, u >= 0``, decided by exact phase-one simplex.
    """
    from .simplex import find_feasible_point

    s = stoichiometric_matrix(net)
    rhs = [-sum(row, Fraction(0)) for row in s]
    u = find_feasible_point(s, rhs)
    if u is None:
        return None
    v = [1 + x for x in u]
    assert all(sum((a * b for a, b in zip(row, v)), Fraction(0)) == 0 for row in s)
    return v
