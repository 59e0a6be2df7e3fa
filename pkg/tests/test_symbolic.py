import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crnobstruct.linalg import bareiss_determinant, identity, matmul
from crnobstruct.poly import MultiPoly, Symbol, TermLimitExceeded
from crnobstruct.symbolic import (
    SymMatrix,
    adjugate_diagonal_via_pcs,
    adjugate_symbolic,
    adjugate_trace_via_pcs,
    char_poly_symbolic,
    det_direct,
    det_via_child_selections,
    sym_jacobian,
)

from helpers import laplace_det, leibniz_det, random_instance, random_network, rv

r1A, r1B, r2A, r3B, r4C = rv(1, "A"), rv(1, "B"), rv(2, "A"), rv(3, "B"), rv(4, "C")
r5B, r5C, r5D = rv(5, "B"), rv(5, "C"), rv(5, "D")
lam = r1A - 2 * r2A
Z = MultiPoly.zero()

EXPECTED_G = [
    [lam, r1B, r4C, Z],
    [-lam, -r1B - r5B, -r5C, -r5D],
    [Z, r3B - r5B, -r5C, -r5D],
    [Z, -r5B, -r5C, -r5D],
]

EXPECTED_ADJ = [
    [Z, -r3B * r4C * r5D, -r1B * r4C * r5D, (r1B + r3B) * r4C * r5D],
    [Z, Z, lam * r4C * r5D, -lam * r4C * r5D],
    [lam * r3B * r5D, lam * r3B * r5D, Z, -lam * r3B * r5D],
    [-lam * r3B * r5C, -lam * r3B * r5C, -lam * r5B * r4C, lam * (r5B * r4C + r3B * r5C - r3B * r4C)],
]


def test_jacobian_matches_expected_matrix(net4):
    assert [list(row) for row in sym_jacobian(net4).entries] == EXPECTED_G


def test_determinant_worked_example(net4):
    g = sym_jacobian(net4)
    det = det_direct(g)
    assert det == lam * r3B * r4C * r5D
    assert str(det) == "1*r[1,A]*r[3,B]*r[4,C]*r[5,D] - 2*r[2,A]*r[3,B]*r[4,C]*r[5,D]"
    assert det_via_child_selections(net4) == det


@pytest.mark.parametrize("i", range(4))
@pytest.mark.parametrize("j", range(4))
def test_adjugate_entries_worked_example(net4, i, j):
    assert adjugate_symbolic(sym_jacobian(net4))[i][j] == EXPECTED_ADJ[i][j]


def test_adjugate_trace_worked_example(net4):
    expected = lam * (r5B * r4C + r3B * r5C - r3B * r4C)
    assert adjugate_trace_via_pcs(net4) == expected
    assert adjugate_diagonal_via_pcs(net4, "A").is_zero()
    assert adjugate_diagonal_via_pcs(net4, "D") == EXPECTED_ADJ[3][3]


def test_core_network_closed_forms(core3):
    g = sym_jacobian(core3)
    assert det_direct(g) == -(r1A - 2 * r2A) * r3B * r4C
    assert adjugate_trace_via_pcs(core3).is_zero()
    assert SymMatrix.from_rows(adjugate_symbolic(g)).trace().is_zero()


def test_leibniz_agrees_on_worked_example(net4):
    g = sym_jacobian(net4)
    assert leibniz_det([list(r) for r in g.entries]) == det_direct(g)


def test_char_poly_diagonal_and_nilpotent():
    x, y = MultiPoly.var(Symbol("x")), MultiPoly.var(Symbol("y"))
    # det(tI - diag(x, y)) = t^2 - (x + y) t + x y
    a0, a1 = char_poly_symbolic(SymMatrix.from_rows([[x, 0], [0, y]]))
    assert a0 == x * y and a1 == -(x + y)
    assert char_poly_symbolic(SymMatrix.from_rows([[0, x], [0, 0]])) == [Z, Z]


def test_char_poly_size_cap():
    with pytest.raises(TermLimitExceeded):
        char_poly_symbolic(SymMatrix.from_rows([[0] * 3] * 3), max_size=2)


def test_term_cap(net6):
    with pytest.raises(TermLimitExceeded):
        det_direct(sym_jacobian(net6), max_terms=1)


def test_char_poly_identities_worked_example(net4):
    g = sym_jacobian(net4)
    a = char_poly_symbolic(g)
    assert a[0] == det_direct(g)
    assert a[1] == -adjugate_trace_via_pcs(net4)
    assert a[3] == -g.trace()


def _check_expansions(net):
    g = sym_jacobian(net)
    det = det_direct(g)
    assert det_via_child_selections(net) == det
    tr = adjugate_trace_via_pcs(net)
    assert SymMatrix.from_rows(adjugate_symbolic(g)).trace() == tr
    sign = -1 if net.n_species % 2 else 1
    a = char_poly_symbolic(g) + [MultiPoly.constant(1)]  # monic leading coefficient
    assert a[0] == sign * det
    assert a[1] == -sign * tr


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_cross_expansion_properties(seed):
    _check_expansions(random_network(random.Random(seed)))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_symbolic_det_evaluates_to_numeric_det(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    g = sym_jacobian(net)
    inst = random_instance(rng, net)
    assert det_direct(g).evaluate(inst) == laplace_det(g.evaluate(inst))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_adjugate_identity_at_random_points(seed):
    rng = random.Random(seed)
    net = random_network(rng, max_species=4)
    g = sym_jacobian(net)
    inst = random_instance(rng, net)
    gv = g.evaluate(inst)
    adj = [[p.evaluate(inst) for p in row] for row in adjugate_symbolic(g)]
    d = bareiss_determinant(gv)
    n = net.n_species
    expect = [[d * e for e in row] for row in identity(n)]
    assert matmul(gv, adj) == expect and matmul(adj, gv) == expect


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_determinant_is_multilinear_in_rate_variables(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    det = det_direct(sym_jacobian(net))
    for v in det.variables():
        assert det.degree_in(v) <= 1


def test_empty_network_matrix():
    g = SymMatrix.from_rows([])
    assert det_direct(g) == MultiPoly.constant(1)
    assert char_poly_symbolic(g) == []


def test_rational_entries_stay_exact():
    x = MultiPoly.var(Symbol("x"))
    g = SymMatrix.from_rows([[Fraction(1, 3), x], [x, Fraction(3, 2)]])
    assert det_direct(g) == Fraction(1, 2) - x * x
