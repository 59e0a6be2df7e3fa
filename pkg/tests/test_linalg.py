import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crnobstruct.linalg import bareiss_determinant, kernel_basis, matmul, nullspace, rank
from crnobstruct.network import positive_kernel_vector, stoichiometric_matrix
from crnobstruct.simplex import find_feasible_point

from helpers import laplace_det, random_network

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def square(n):
    return st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)


def test_empty_determinant_is_one():
    assert bareiss_determinant([]) == 1


def test_repeated_column_determinant_is_zero():
    a = [[1, 2, 1], [3, 4, 3], [5, 7, 5]]
    assert bareiss_determinant(a) == 0


def test_non_square_rejected():
    with pytest.raises(ValueError):
        bareiss_determinant([[1, 2]])


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(square))
def test_bareiss_matches_laplace(a):
    assert bareiss_determinant(a) == laplace_det([[Fraction(x) for x in row] for row in a])


def _rank_by_row_reduction(a):
    # Plain Gauss elimination on Fractions, column by column (a different pivot order).
    m = [[Fraction(x) for x in row] for row in a]
    r = 0
    for c in reversed(range(len(m[0]) if m else 0)):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c] / m[r][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return sum(1 for row in m if any(row))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_agrees_with_other_pivot_order(n, k, data):
    a = data.draw(st.lists(st.lists(st.sampled_from([-2, -1, 0, 0, 0, 1, 2, Fraction(1, 2)]),
                                    min_size=k, max_size=k), min_size=n, max_size=n))
    assert rank(a) == _rank_by_row_reduction(a)


def test_rank_examples():
    assert rank([[0, 0, 0]] * 3) == 0
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.data())
def test_nullspace_spans_kernel(n, k, data):
    a = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=k, max_size=k), min_size=n, max_size=n))
    basis, free = kernel_basis(a)
    assert len(basis) == k - rank(a)
    for v, f in zip(basis, free):
        assert all(row[0] == 0 for row in matmul(a, [[x] for x in v]))
        assert [v[g] for g in free] == [int(g == f) for g in free]


def test_simplex_simple_cases():
    assert find_feasible_point([[1, 1]], [2]) is not None
    assert find_feasible_point([[1, 1]], [-1]) is None
    x = find_feasible_point([[1, -1], [0, 1]], [0, 3])
    assert x == [3, 3]


def test_simplex_degenerate_cycling_example():
    # Beale-style degenerate system: Bland's rule must terminate.
    a = [
        [Fraction(1, 4), -8, -1, 9, 1, 0, 0],
        [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    x = find_feasible_point(a, [0, 0, 1])
    assert x is not None
    assert [sum(Fraction(c) * v for c, v in zip(row, x)) for row in a] == [0, 0, 1]


def test_positive_kernel_agrees_with_float_lp():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = random.Random(7)
    agree = 0
    for _ in range(300):
        net = random_network(rng, max_species=4, max_reactions=8)
        s = [[float(x) for x in row] for row in stoichiometric_matrix(net)]
        res = scipy_opt.linprog(
            c=[0.0] * net.n_reactions, A_eq=s, b_eq=[0.0] * net.n_species,
            bounds=[(1, None)] * net.n_reactions, method="highs",
        )
        assert (positive_kernel_vector(net) is not None) == (res.status == 0)
        agree += 1
    assert agree == 300


def test_nullspace_of_full_rank_is_empty():
    assert nullspace([[1, 0], [0, 1]]) == []
