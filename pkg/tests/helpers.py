"""Independent oracles and generators shared by the tests.

Nothing here calls the code paths it is used to check: determinants are
Laplace expansions, selections come from exhaustive search over all maps.
"""

import itertools
import random
from fractions import Fraction

from crnobstruct.network import Network, RateVariable, Reaction
from crnobstruct.poly import MultiPoly


def laplace_det(a):
    n = len(a)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        total += (-1) ** j * a[0][j] * laplace_det(minor)
    return total


def leibniz_det(a):
    """Sum over permutations; works for any commutative ring entries."""
    n = len(a)
    total = None
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for k in range(i + 1, n) if perm[i] > perm[k])
        term = 1
        for i in range(n):
            term = a[i][perm[i]] * term
        term = -term if inv % 2 else term
        total = term if total is None else total + term
    return total if total is not None else 1


def brute_force_selections(net, species):
    """All injective maps ``species -> reactions`` honoring the reactant rule, by checking E**k maps."""
    out = []
    labels = net.labels
    for combo in itertools.product(labels, repeat=len(species)):
        if len(set(combo)) != len(combo):
            continue
        if all(m in net.reaction(j).reactants for m, j in zip(species, combo)):
            out.append(combo)
    return out


def naive_matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def random_network(rng: random.Random, max_species=5, max_reactions=12, coeffs=(1, 2, 3),
                   min_species=1) -> Network:
    m = rng.randint(min_species, max_species)
    e = rng.randint(1, max_reactions)
    names = [chr(ord("A") + i) for i in range(m)]
    reactions = []
    for j in range(e):
        k_in = rng.choice([0, 1, 1, 1, 2, 2, 3])
        k_out = rng.choice([0, 1, 1, 2, 2])
        reactants = {s: Fraction(rng.choice(coeffs)) for s in rng.sample(names, min(k_in, m))}
        products = {s: Fraction(rng.choice(coeffs)) for s in rng.sample(names, min(k_out, m))}
        reactions.append(Reaction(str(j + 1), reactants, products))
    return Network.build(names, reactions)


def random_instance(rng: random.Random, net, top=20):
    from crnobstruct.network import rate_variables

    return {v: Fraction(rng.randint(1, top), rng.randint(1, top)) for v in rate_variables(net)}


def rv(label, species):
    return MultiPoly.var(RateVariable(str(label), species))
