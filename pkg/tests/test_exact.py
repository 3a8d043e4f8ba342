from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.exact import (
    Echelon,
    NotUnimodular,
    Q,
    SpanCoordinates,
    det,
    int_det,
    int_inverse,
    kernel_basis,
    mat_mul,
    q_str,
    rank,
    smith_diagonal,
    smith_normal_form,
    solve,
    to_q,
)


def test_rational_normalization():
    x = to_q("6/-4")
    assert x.numerator == -3 and x.denominator == 2
    assert q_str(x) == "-3/2"
    assert to_q(Fraction(2, 4)) == Q(1, 2)


def test_to_q_rejects_floats():
    with pytest.raises(TypeError):
        to_q(0.5)


def test_kernel_rank_one():
    assert kernel_basis([[1, 1], [1, 1]]) == [[1, -1]]


def test_kernel_identity_is_empty():
    assert kernel_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []


def test_kernel_of_zero_matrix():
    assert kernel_basis([[0, 0, 0], [0, 0, 0]]) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_solve_examples():
    assert solve([[1, 0], [0, 1]], [2, 3]) == ([2, 3], [])
    assert solve([[1, 1]], [5]) == ([5, 0], [[1, -1]])
    assert solve([[0]], [1]) is None


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]])[1] == [[2, 0], [0, 4]]
    assert smith_normal_form([[1, 0], [0, 1]])[1] == [[1, 0], [0, 1]]
    assert smith_normal_form([[0, 0], [0, 0]])[1] == [[0, 0], [0, 0]]


def test_int_inverse_examples():
    assert int_inverse([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    assert int_inverse([[1, 1], [0, 1]]) == [[1, -1], [0, 1]]
    with pytest.raises(NotUnimodular):
        int_inverse([[2, 0], [0, 1]])


def test_span_coordinates():
    sc = SpanCoordinates([{0: Q(1), 1: Q(1)}, {1: Q(1)}], 2)
    assert sc.coords({0: Q(2), 1: Q(5)}) == [2, 3]
    assert sc.contains({0: Q(1)})


def test_echelon_rref_is_reduced():
    e = Echelon([{0: Q(1), 1: Q(2)}, {0: Q(3), 1: Q(4)}])
    assert e.rank == 2
    red = e.rref()
    assert red[0] == {0: 1} and red[1] == {1: 1}


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_is_annihilated_and_complete(m):
    ker = kernel_basis(m)
    for v in ker:
        assert all(sum(Q(a) * x for a, x in zip(row, v)) == 0 for row in m)
    assert len(ker) == len(m[0]) - rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_solve_reproduces_rhs(m, data):
    x0 = data.draw(st.lists(st.integers(-3, 3), min_size=len(m[0]), max_size=len(m[0])))
    b = [sum(a * x for a, x in zip(row, x0)) for row in m]
    res = solve(m, b)
    assert res is not None
    x, _ = res
    assert [sum(Q(a) * y for a, y in zip(row, x)) for row in m] == b


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_snf_certificate(m):
    u, d, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == d
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    assert smith_diagonal(m) == nz


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_int_inverse_roundtrip(m):
    if abs(det(m)) != 1:
        with pytest.raises(NotUnimodular):
            int_inverse(m)
        return
    inv = int_inverse(m)
    assert mat_mul(m, inv) == [[int(i == j) for j in range(3)] for i in range(3)]
