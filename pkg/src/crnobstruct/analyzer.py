"""Structural verdict on whether the eigenvalue zero can ever be simple.

The Jacobian has an algebraically simple zero eigenvalue exactly when
``det G = 0`` and ``tr Adj(G) != 0``. The analyzer samples the positive part
of ``{det G = 0}`` exactly and, when ``tr Adj(G)`` never survives there,
looks for a divisibility certificate proving it never can.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .linalg import is_zero_matrix
from .network import Network, RateVariable, rate_variables
from .oracle import jacobian_at, report_for_matrix, validate_instance
from .poly import Monomial, MultiPoly, exact_divide, monomial_content
from .selections import DEFAULT_MAX_NODES, enumerate_child_selections
from .symbolic import adjugate_trace_via_pcs, det_via_child_selections

__all__ = [
    "SignClass",
    "VerdictKind",
    "Certificate",
    "ObstructionVerdict",
    "GeometricCheck",
    "random_positive_rational",
    "sign_classification",
    "singular_witness",
    "divisibility_certificate",
    "obstruction_verdict",
    "geometric_check_at",
]

DEFAULT_SAMPLES = 256
DEFAULT_ATTEMPTS = 64
SAMPLE_RANGE = 100


class SignClass(str, enum.Enum):
    ALL_NONNEGATIVE = "ALL_NONNEGATIVE"
    ALL_NONPOSITIVE = "ALL_NONPOSITIVE"
    MIXED = "MIXED"
    ALL_ZERO = "ALL_ZERO"


class VerdictKind(str, enum.Enum):
    NONSINGULAR_STRUCTURAL = "NONSINGULAR_STRUCTURAL"
    DEGENERATE = "DEGENERATE"
    SIMPLE_ZERO_ACHIEVABLE = "SIMPLE_ZERO_ACHIEVABLE"
    OBSTRUCTED = "OBSTRUCTED"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Certificate:
    """``det == scale * content * factor`` and ``tr_adj == quotient * factor``.

    ``content`` is a monomial, positive on the open orthant, so ``det = 0``
    there forces ``factor = 0`` and hence ``tr_adj = 0``.
    """

    scale: Fraction
    content: Monomial
    factor: MultiPoly
    quotient: MultiPoly

    def to_json(self) -> dict:
        return {
            "scale": str(self.scale),
            "content": str(self.content),
            "factor": str(self.factor),
            "quotient": str(self.quotient),
        }


@dataclass(frozen=True)
class ObstructionVerdict:
    kind: VerdictKind
    det: MultiPoly
    tr_adj: MultiPoly
    sign_class: SignClass
    certificate: Optional[Certificate] = None
    witness: Optional[dict] = None
    tried: int = 0
    singular_found: int = 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "det": str(self.det),
            "tr_adj": str(self.tr_adj),
            "sign_class": self.sign_class.value,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "witness": _witness_json(self.witness),
            "samples": {"tried": self.tried, "singular_found": self.singular_found},
        }


def _witness_json(w):
    if w is None:
        return None
    items = sorted(w.items(), key=lambda kv: kv[0].sort_key)
    return {str(k): str(v) for k, v in items}


def random_positive_rational(rng: random.Random, top: int = SAMPLE_RANGE) -> Fraction:
    return Fraction(rng.randint(1, top), rng.randint(1, top))


def sign_classification(net: Network, max_nodes: int = DEFAULT_MAX_NODES, selections=None) -> SignClass:
    if selections is None:
        selections = enumerate_child_selections(net, max_nodes)
    alphas = [cs.alpha for cs in selections]
    pos = any(a > 0 for a in alphas)
    neg = any(a < 0 for a in alphas)
    if pos and neg:
        return SignClass.MIXED
    if pos:
        return SignClass.ALL_NONNEGATIVE
    if neg:
        return SignClass.ALL_NONPOSITIVE
    return SignClass.ALL_ZERO


class _Solver:
    """Exact sampler of positive points on ``{det = 0}``.

    ``det`` is multilinear, so with every variable but one fixed it is
    ``a * v + b`` and the root ``v = -b / a`` is exact.
    """

    def __init__(self, variables, det: MultiPoly):
        self.variables = sorted(variables, key=lambda v: v.sort_key)
        self.splits = [(v, *det.split_linear(v)) for v in self.variables if det.degree_in(v) == 1]

    def sample(self, rng: random.Random) -> Optional[dict]:
        point = {v: random_positive_rational(rng) for v in self.variables}
        for v, a, b in self.splits:
            av = a.evaluate(point)
            if av == 0:
                continue
            root = -b.evaluate(point) / av
            if root > 0:
                point[v] = root
                return point
        return None


def singular_witness(
    net: Network,
    seed: int = 0,
    attempts: int = DEFAULT_ATTEMPTS,
    det: Optional[MultiPoly] = None,
) -> Optional[dict]:
    """A strictly positive rate instance with ``det G = 0``, or ``None``."""
    if det is None:
        det = det_via_child_selections(net)
    if det.is_zero():
        raise ValueError("determinant is identically zero")
    rng = random.Random(seed)
    solver = _Solver(rate_variables(net), det)
    for _ in range(attempts):
        point = solver.sample(rng)
        if point is not None:
            return point
    return None


def divisibility_certificate(det: MultiPoly, tr_adj: MultiPoly) -> Optional[Certificate]:
    if det.is_zero():
        raise ValueError("determinant is identically zero")
    content = monomial_content(det)
    stripped = MultiPoly({m / content: c for m, c in det.terms.items()})
    if stripped.is_constant():
        # A monomial det never vanishes on the open orthant: nothing to certify.
        return None
    _, scale = stripped.leading_term()
    factor = stripped / scale
    quotient = exact_divide(tr_adj, factor)
    if quotient is None:
        return None
    return Certificate(scale, content, factor, quotient)


def obstruction_verdict(
    net: Network,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> ObstructionVerdict:
    selections = enumerate_child_selections(net, max_nodes)
    sign = sign_classification(net, selections=selections)
    det = det_via_child_selections(net, selections=selections)
    tr_adj = adjugate_trace_via_pcs(net, max_nodes)
    base = dict(det=det, tr_adj=tr_adj, sign_class=sign)

    if sign is SignClass.ALL_ZERO:
        return ObstructionVerdict(VerdictKind.DEGENERATE, **base)
    if sign is not SignClass.MIXED:
        return ObstructionVerdict(VerdictKind.NONSINGULAR_STRUCTURAL, **base)

    rng = random.Random(seed)
    solver = _Solver(rate_variables(net), det)
    singular = []
    for tried in range(1, samples + 1):
        point = solver.sample(rng)
        if point is None:
            continue
        singular.append(point)
        if tr_adj.evaluate(point) != 0:
            return ObstructionVerdict(
                VerdictKind.SIMPLE_ZERO_ACHIEVABLE, witness=point,
                tried=tried, singular_found=len(singular), **base,
            )

    cert = divisibility_certificate(det, tr_adj)
    if cert is not None and singular:
        return ObstructionVerdict(
            VerdictKind.OBSTRUCTED, certificate=cert, witness=singular[0],
            tried=samples, singular_found=len(singular), **base,
        )
    return ObstructionVerdict(
        VerdictKind.UNDECIDED, certificate=cert,
        witness=singular[0] if singular else None,
        tried=samples, singular_found=len(singular), **base,
    )


@dataclass(frozen=True)
class GeometricCheck:
    adjugate_zero: bool
    rank: int
    adjugate: tuple = field(repr=False, default=())

    @property
    def geometrically_simple(self) -> bool:
        return not self.adjugate_zero


def geometric_check_at(net: Network, inst: Mapping[RateVariable, Fraction]) -> GeometricCheck:
    """Whether ``Adj(G)`` vanishes at a singular instance.

    A nonzero adjugate means rank ``M - 1``: the zero eigenvalue is
    geometrically simple. A zero adjugate means rank ``<= M - 2``.
    """
    validate_instance(net, inst)
    rep = report_for_matrix(jacobian_at(net, inst))
    if rep.determinant != 0:
        raise ValueError("Jacobian is nonsingular at this instance")
    return GeometricCheck(is_zero_matrix(rep.adjugate), rep.rank, rep.adjugate)
