from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from freearr.qlinalg import (QMatrix, as_rational, format_rational, int_kernel,
                             int_rref, inverse, kernel_basis, rank, rref,
                             solve_affine)

small = st.integers(-5, 5)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_as_rational_accepts_strings_and_rejects_floats():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(-4) == -4
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert format_rational(Fraction(-7, 3)) == "-7/3"
    assert format_rational(Fraction(4)) == "4"


def test_matmul_and_identity():
    a = QMatrix.from_rows([[1, 2], [3, 4]])
    assert a @ QMatrix.identity(2) == a
    assert a @ [1, 1] == (3, 7)
    assert inverse(a) @ a == QMatrix.identity(2)
    assert a.transpose().row(0) == (1, 3)


def test_inverse_of_singular_matrix_fails():
    with pytest.raises(ZeroDivisionError):
        inverse(QMatrix.from_rows([[1, 2], [2, 4]]))


def test_rref_normalizes_pivots():
    red, piv, r = rref(QMatrix.from_rows([[2, 4, 6], [1, 1, 1]]))
    assert r == 2 and piv == [0, 1]
    assert red.row(0) == (1, 0, -1)
    assert red.row(1) == (0, 1, 2)


def test_solve_affine():
    m = QMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    part, ker = solve_affine(m, [1, 2])
    assert m @ list(part) == (1, 2)
    assert len(ker) == 1 and m @ list(ker[0]) == (0, 0)
    assert solve_affine(QMatrix.from_rows([[1, 1], [1, 1]]), [0, 1]) is None


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_kernel_match_sympy(rows):
    ncols = len(rows[0])
    m = QMatrix.from_rows(rows, ncols)
    ref = sp.Matrix(rows)
    assert rank(m) == ref.rank()
    ker = kernel_basis(m)
    assert len(ker) == ncols - ref.rank()
    for v in ker:
        assert all(x == 0 for x in m @ list(v))
    red, _, _ = rref(m)
    ref_red, _ = ref.rref()
    assert [list(red.row(i)) for i in range(ref.rank())] == \
        [[Fraction(int(x.p), int(x.q)) for x in ref_red.row(i)] for i in range(ref.rank())]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_int_rref_rows_are_primitive_with_positive_pivots(rows):
    from math import gcd
    red, piv = int_rref(rows, len(rows[0]))
    for r, p in zip(red, piv):
        assert r[p] > 0
        g = 0
        for x in r:
            g = gcd(g, x)
        assert g == 1
        assert all(red[k][p] == 0 for k in range(len(red)) if red[k] is not r)
    for v in int_kernel(rows, len(rows[0])):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)
