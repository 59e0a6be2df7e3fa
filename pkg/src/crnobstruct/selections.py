"""Child Selections and Partial Child Selections.

A Child Selection assigns to every species a distinct reaction that consumes
it; its behavior coefficient is the determinant of the stoichiometric columns
it picks, taken in species order. A Partial Child Selection does the same for
all species but one and drops that species' row before taking the
determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .linalg import bareiss_determinant
from .network import Network, stoichiometric_matrix

__all__ = [
    "DEFAULT_MAX_NODES",
    "EnumerationCapExceeded",
    "ChildSelection",
    "PartialChildSelection",
    "minor_determinant",
    "enumerate_child_selections",
    "enumerate_partial_child_selections",
]

DEFAULT_MAX_NODES = 10**7


class EnumerationCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ChildSelection:
    """``assignment`` pairs each species (in network order) with a reaction label."""

    assignment: tuple[tuple[str, str], ...]
    alpha: Fraction

    @property
    def reactions(self) -> tuple[str, ...]:
        return tuple(j for _, j in self.assignment)

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


@dataclass(frozen=True)
class PartialChildSelection:
    omitted: str
    assignment: tuple[tuple[str, str], ...]
    beta: Fraction

    @property
    def reactions(self) -> tuple[str, ...]:
        return tuple(j for _, j in self.assignment)

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


def minor_determinant(
    net_or_matrix,
    columns: Sequence[str],
    drop_row: Optional[str] = None,
    net: Optional[Network] = None,
) -> Fraction:
    """Determinant of the stoichiometric columns ``columns`` (one per species).

    ``net_or_matrix`` is a :class:`Network`, or a stoichiometric matrix
    together with ``net=`` to resolve labels. With ``drop_row`` the named
    species' row is removed and ``columns`` must have one entry fewer.
    """
    if isinstance(net_or_matrix, Network):
        net = net_or_matrix
        s = stoichiometric_matrix(net)
    else:
        if net is None:
            raise ValueError("a bare matrix needs net= to resolve reaction labels")
        s = net_or_matrix
    n = net.n_species
    want = n if drop_row is None else n - 1
    if len(columns) != want:
        raise ValueError(f"expected {want} columns, got {len(columns)}")
    labels = net.labels
    col_idx = [labels.index(c) for c in columns]
    skip = None if drop_row is None else net.species_index(drop_row)
    sub = [[s[i][j] for j in col_idx] for i in range(n) if i != skip]
    return bareiss_determinant(sub)


def _assignments(net: Network, species: Sequence[str], max_nodes: int) -> Iterator[tuple[str, ...]]:
    """Injective maps species -> consuming reaction, lexicographic in reaction order."""
    choices = [net.consumers(s) for s in species]
    if any(not c for c in choices):
        return
    chosen: list[str] = []
    used: set[str] = set()
    nodes = 0

    def walk(depth):
        nonlocal nodes
        if depth == len(species):
            yield tuple(chosen)
            return
        for j in choices[depth]:
            if j in used:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise EnumerationCapExceeded(f"more than {max_nodes} search nodes")
            used.add(j)
            chosen.append(j)
            yield from walk(depth + 1)
            chosen.pop()
            used.discard(j)

    yield from walk(0)


def enumerate_child_selections(net: Network, max_nodes: int = DEFAULT_MAX_NODES) -> list[ChildSelection]:
    names = net.species_names
    s = stoichiometric_matrix(net)
    out = []
    for cols in _assignments(net, names, max_nodes):
        alpha = minor_determinant(s, cols, net=net)
        out.append(ChildSelection(tuple(zip(names, cols)), alpha))
    return out


def enumerate_partial_child_selections(
    net: Network, omitted: str, max_nodes: int = DEFAULT_MAX_NODES
) -> list[PartialChildSelection]:
    if omitted not in net.species_names:
        raise KeyError(f"unknown species {omitted!r}")
    names = tuple(n for n in net.species_names if n != omitted)
    s = stoichiometric_matrix(net)
    out = []
    for cols in _assignments(net, names, max_nodes):
        beta = minor_determinant(s, cols, drop_row=omitted, net=net)
        out.append(PartialChildSelection(omitted, tuple(zip(names, cols)), beta))
    return out
