"""Exact structural analysis of the zero eigenvalue of reaction network Jacobians."""

__version__ = "0.1.0"

from .network import (
    Network,
    ParseError,
    RateVariable,
    Reaction,
    Species,
    format_network,
    load_network,
    parse_network,
    positive_kernel_vector,
    rate_variables,
    stoichiometric_matrix,
)
from .poly import Monomial, MultiPoly, Symbol, evaluate, exact_divide, monomial_content
from .selections import (
    ChildSelection,
    EnumerationCapExceeded,
    PartialChildSelection,
    enumerate_child_selections,
    enumerate_partial_child_selections,
    minor_determinant,
)
from .symbolic import (
    SymMatrix,
    adjugate_symbolic,
    adjugate_trace_via_pcs,
    char_poly_symbolic,
    det_direct,
    det_via_child_selections,
    sym_jacobian,
)
from .oracle import SpectralReport, faddeev_leverrier, rank_rational, spectral_report
from .analyzer import (
    ObstructionVerdict,
    SignClass,
    VerdictKind,
    divisibility_certificate,
    geometric_check_at,
    obstruction_verdict,
    sign_classification,
    singular_witness,
)
from .massaction import (
    MassActionInstance,
    check_equilibrium,
    ma_jacobian_rates,
    ma_rates,
    probe_singular_equilibrium,
)
