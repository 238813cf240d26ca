from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from tambara.base import (BOOL, RAT, BaseMap, BaseObject, InvalidShape, NotInvertible, col, eye, hstack, inverse,
                          is_isomorphism, kron, mat, nullspace, permute_tensor, quotient, rank, rref, same,
                          solve_particular, swap, to_lists, unit_vector, zeros)

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(n)] for _ in range(m)]


def oracle(rows):
    return sympy.Matrix(rows)


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(mat(rows)) == oracle(rows).rank()


@given(matrices())
def test_rref_pivots_match_sympy(rows):
    _, piv = rref(mat(rows))
    assert tuple(piv) == oracle(rows).rref()[1]


@given(matrices())
def test_nullspace_is_kernel_of_right_size(rows):
    a = mat(rows)
    ns = nullspace(a)
    assert ns.shape[1] == a.shape[1] - oracle(rows).rank()
    assert same(a * ns, zeros(a.shape[0], ns.shape[1]))


@given(matrices(3, 3))
def test_inverse_or_singular(rows):
    n = min(len(rows), len(rows[0]))
    square = [r[:n] for r in rows[:n]]
    a = mat(square)
    if oracle(square).det() == 0:
        with pytest.raises(NotInvertible):
            inverse(a)
    else:
        assert same(a * inverse(a), eye(n))
        inv = oracle(square).inv()
        assert to_lists(inverse(a)) == [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(n)]


@given(matrices(), st.data())
def test_solve_particular(rows, data):
    a = mat(rows)
    x = col([data.draw(small) for _ in range(a.shape[1])])
    b = a * x
    y = solve_particular(a, b)
    assert y is not None and same(a * y, b)


def test_solve_particular_inconsistent():
    a = mat([[1, 0], [0, 0]])
    assert solve_particular(a, col([0, 1])) is None


@given(matrices())
def test_quotient_laws(rows):
    a = mat(rows)
    q = quotient(RAT, a.shape[0], a)
    assert q.check() == []
    assert q.dim == a.shape[0] - oracle(rows).rank()


def test_bool_quotient_collapses():
    assert quotient(BOOL, 3).dim == 1
    assert quotient(BOOL, 0).dim == 0


def test_permute_tensor_moves_factors():
    u, v, w = col([1, 2]), col([3, 5, 7]), col([11, 13])
    p = permute_tensor([2, 3, 2], [1, 2, 0])
    assert same(p * kron(kron(u, v), w), kron(kron(v, w), u))
    assert same(swap(2, 3) * kron(u, v), kron(v, u))


def test_kron_shape_and_unit_vectors():
    assert kron(eye(2), eye(3)).shape == (6, 6)
    assert same(kron(unit_vector(2, 1), unit_vector(2, 0)), unit_vector(4, 2))


def test_base_objects_and_maps():
    t, f = BaseObject.of_truth(True), BaseObject.of_truth(False)
    assert t.truth and not f.truth
    with pytest.raises(InvalidShape):
        BaseMap(t, f, zeros(0, 1))
    with pytest.raises(InvalidShape):
        BaseObject(BOOL, 2)
    q2 = BaseObject(RAT, 2)
    m = BaseMap(q2, q2, mat([[0, 1], [1, 0]]))
    assert is_isomorphism(m @ m)
    assert not is_isomorphism(mat([[1, 1], [1, 1]]))
    assert is_isomorphism(zeros(1, 1), BOOL)


def test_hstack_with_empty_blocks():
    assert hstack([zeros(2, 0), eye(2)]).shape == (2, 2)
