"""Mass-action specialization: ``r_j(x) = k_j * prod_m x_m ** s_jm``.

Inflow reactions keep a constant rate, stored under their label in ``k``.
Reactant coefficients must be integers so rates and derivatives stay
rational.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .analyzer import random_positive_rational
from .linalg import kernel_basis, matmul
from .network import Network, RateVariable, positive_kernel_vector, rate_variables, stoichiometric_matrix
from .oracle import SpectralReport, jacobian_at, report_for_matrix
from .poly import Monomial, MultiPoly, Symbol
from .selections import enumerate_child_selections

__all__ = [
    "MassActionInstance",
    "ProbeResult",
    "ma_rates",
    "ma_jacobian_rates",
    "ma_symbolic_rates",
    "check_equilibrium",
    "probe_singular_equilibrium",
    "k_symbol",
    "x_symbol",
]


@dataclass(frozen=True)
class MassActionInstance:
    k: Mapping[str, Fraction]
    x: Mapping[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "k", {a: Fraction(b) for a, b in self.k.items()})
        object.__setattr__(self, "x", {a: Fraction(b) for a, b in self.x.items()})

    def validate(self, net: Network) -> None:
        missing = [r for r in net.labels if r not in self.k] + [s for s in net.species_names if s not in self.x]
        if missing:
            raise ValueError("mass-action instance misses " + ", ".join(missing))
        bad = [n for n, v in (*self.k.items(), *self.x.items()) if v <= 0]
        if bad:
            raise ValueError("values must be strictly positive: " + ", ".join(bad))

    def to_json(self) -> dict:
        return {"k": {a: str(b) for a, b in self.k.items()}, "x": {a: str(b) for a, b in self.x.items()}}


def _integer_exponents(net: Network) -> None:
    for r in net.reactions:
        for s, c in r.reactants.items():
            if c.denominator != 1:
                raise ValueError(f"reaction {r.label}: mass action needs an integer coefficient for {s}, got {c}")


def ma_rates(net: Network, inst: MassActionInstance) -> list[Fraction]:
    _integer_exponents(net)
    inst.validate(net)
    out = []
    for r in net.reactions:
        v = inst.k[r.label]
        for s, c in r.reactants.items():
            v *= inst.x[s] ** int(c)
        out.append(v)
    return out


def ma_jacobian_rates(net: Network, inst: MassActionInstance) -> dict[RateVariable, Fraction]:
    """``r[j,m] = k_j * s_jm * x_m ** (s_jm - 1) * prod_{n != m} x_n ** s_jn``."""
    _integer_exponents(net)
    inst.validate(net)
    out = {}
    for r in net.reactions:
        for m, c in r.reactants.items():
            v = inst.k[r.label] * c * inst.x[m] ** (int(c) - 1)
            for n, cn in r.reactants.items():
                if n != m:
                    v *= inst.x[n] ** int(cn)
            out[RateVariable(r.label, m)] = v
    return {v: out[v] for v in rate_variables(net)}


def k_symbol(label: str) -> Symbol:
    return Symbol(f"k[{label}]")


def x_symbol(species: str) -> Symbol:
    return Symbol(f"x[{species}]")


def ma_symbolic_rates(net: Network) -> dict[RateVariable, MultiPoly]:
    """Each rate variable as a polynomial in the symbols ``k[j]`` and ``x[m]``."""
    _integer_exponents(net)
    out = {}
    for r in net.reactions:
        for m, c in r.reactants.items():
            powers = {k_symbol(r.label): 1}
            for n, cn in r.reactants.items():
                e = int(cn) - (1 if n == m else 0)
                if e:
                    powers[x_symbol(n)] = e
            out[RateVariable(r.label, m)] = MultiPoly.from_monomial(Monomial(powers), c)
    return out


def check_equilibrium(net: Network, inst: MassActionInstance) -> tuple[list[Fraction], SpectralReport]:
    """Exact residual ``S r(x)`` and the spectral report of the Jacobian at ``(k, x)``."""
    s = stoichiometric_matrix(net)
    rates = ma_rates(net, inst)
    residual = [row[0] for row in matmul(s, [[v] for v in rates])]
    report = report_for_matrix(jacobian_at(net, ma_jacobian_rates(net, inst)))
    return residual, report


@dataclass(frozen=True)
class ProbeResult:
    witness: Optional[MassActionInstance]
    attempts: int
    has_positive_equilibria: bool
    det_signs_seen: tuple[int, ...] = ()
    note: str = ""
    kernel_dimension: int = 0

    def __bool__(self):
        return self.witness is not None

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json() if self.witness else None,
            "attempts": self.attempts,
            "has_positive_equilibria": self.has_positive_equilibria,
            "det_signs_seen": list(self.det_signs_seen),
            "note": self.note,
        }


def _flux_determinant(net: Network) -> MultiPoly:
    """``det G`` at a mass-action equilibrium, up to the positive factor ``prod_m 1/x_m``.

    With flux ``v_j = r_j(x)`` one has ``r[j,m] = s_jm v_j / x_m``, so
    ``det G * prod_m x_m = sum_J alpha_J prod_m s_{J(m)m} v_{J(m)}``: a
    polynomial in the fluxes alone, independent of ``x``.
    """
    terms = {}
    for cs in enumerate_child_selections(net):
        if not cs.alpha:
            continue
        coeff = cs.alpha
        powers = {}
        for m, j in cs.assignment:
            coeff *= net.reaction(j).reactants[m]
            powers[Symbol(f"v[{j}]")] = 1
        mono = Monomial(powers)
        terms[mono] = terms.get(mono, 0) + coeff
    return MultiPoly(terms)


def probe_singular_equilibrium(net: Network, seed: int = 0, attempts: int = 1000) -> ProbeResult:
    """Search for ``(k, x) > 0`` with zero residual and singular Jacobian.

    Equilibrium is linear in ``k`` for fixed ``x``: the fluxes ``v = k * x^s``
    must lie in the positive part of ``ker S``. Singularity only depends on
    ``v`` (see :func:`_flux_determinant`). Each attempt samples the free
    kernel coordinates positively and, where the flux determinant is linear
    in one of them, solves for it exactly. A found flux is turned into rate
    constants at a random positive ``x``. Absence is evidence, not proof.
    """
    _integer_exponents(net)
    labels = net.labels
    v_star = positive_kernel_vector(net)
    if v_star is None:
        return ProbeResult(None, 0, False, note="no strictly positive equilibrium flux exists")

    rng = random.Random(seed)
    s = stoichiometric_matrix(net)
    basis, free = kernel_basis(s)
    coords = [Symbol(f"c[{labels[i]}]") for i in free]
    # v = sum_i c_i * basis_i
    flux_of = {
        Symbol(f"v[{labels[j]}]"): sum(
            (MultiPoly.var(c, b[j]) for c, b in zip(coords, basis) if b[j]), MultiPoly.zero()
        )
        for j in range(len(labels))
    }
    pdet = _flux_determinant(net).substitute(flux_of)

    def finish(c_values):
        v = [sum((c_values[c] * b[j] for c, b in zip(coords, basis)), Fraction(0)) for j in range(len(labels))]
        if any(x <= 0 for x in v):
            return None
        x = {m: random_positive_rational(rng) for m in net.species_names}
        k = {}
        for j, r in enumerate(net.reactions):
            mono = Fraction(1)
            for m, c in r.reactants.items():
                mono *= x[m] ** int(c)
            k[r.label] = v[j] / mono
        inst = MassActionInstance(k, x)
        residual, report = check_equilibrium(net, inst)
        if any(residual) or report.determinant != 0:
            return None
        return inst

    if pdet.is_zero():
        star = {c: v_star[i] for c, i in zip(coords, free)}
        inst = finish(star)
        return ProbeResult(inst, 1, True, note="every positive equilibrium is singular",
                           kernel_dimension=len(basis))

    splits = [(c, *pdet.split_linear(c)) for c in coords if pdet.degree_in(c) == 1]
    signs = set()
    for attempt in range(1, attempts + 1):
        point = {c: random_positive_rational(rng) for c in coords}
        value = pdet.evaluate(point)
        if all(
            sum((point[c] * b[j] for c, b in zip(coords, basis)), Fraction(0)) > 0
            for j in range(len(labels))
        ):
            signs.add((value > 0) - (value < 0))
        for c, a, b in splits:
            av = a.evaluate(point)
            if av == 0:
                continue
            root = -b.evaluate(point) / av
            if root <= 0:
                continue
            trial = dict(point)
            trial[c] = root
            inst = finish(trial)
            if inst is not None:
                return ProbeResult(inst, attempt, True, tuple(sorted(signs)), kernel_dimension=len(basis))
    note = "no singular equilibrium found"
    if len(signs) > 1:
        note += "; the flux determinant changes sign on the equilibrium cone, so a real one exists"
    return ProbeResult(None, attempts, True, tuple(sorted(signs)), note, kernel_dimension=len(basis))
