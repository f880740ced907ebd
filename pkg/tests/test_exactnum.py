from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grpexp.errors import DomainError
from grpexp.exactnum import (
    EchelonBasis,
    RatMatrix,
    format_rational,
    parse_rational,
    rank,
    rref,
    transpose,
)

from oracles import sympy_rank, sympy_rref

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rref_examples():
    m, piv = rref(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert m.to_rows() == [[1, 2], [0, 0]] and piv == [0]
    m, piv = rref(RatMatrix.identity(3))
    assert m == RatMatrix.identity(3) and piv == [0, 1, 2]
    m, piv = rref(RatMatrix.from_rows([[0, 1], [1, 0]]))
    assert m.to_rows() == [[1, 0], [0, 1]] and piv == [0, 1]


def test_rank_examples():
    assert rank(RatMatrix.zeros(2, 2)) == 0
    assert rank(RatMatrix.identity(4)) == 4
    assert rank(RatMatrix.from_rows([[1, 2], [2, 4], [3, 6]])) == 1


def test_matrix_shape_checked():
    with pytest.raises(DomainError):
        RatMatrix(2, 2, [1, 2, 3])


def test_parse_and_format():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == -4
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(6, 3)) == "2"
    with pytest.raises(DomainError):
        parse_rational("1/0")
    with pytest.raises(DomainError):
        parse_rational(0.5)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(rows):
    m, piv = rref(RatMatrix.from_rows(rows))
    want, want_piv = sympy_rref(rows)
    assert m.to_rows() == want and piv == want_piv


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent_and_rank_transpose(rows):
    m = RatMatrix.from_rows(rows)
    r, piv = rref(m)
    assert rref(r) == (r, piv)
    assert all(a < b for a, b in zip(piv, piv[1:]))
    assert rank(m) == rank(transpose(m)) == sympy_rank(rows)


@given(small.filter(lambda q: q != 0))
def test_exact_inverse(q):
    assert q * (1 / q) == 1


@settings(max_examples=60, deadline=None)
@given(matrices(5, 5))
def test_echelon_basis_agrees_with_rank(rows):
    basis = EchelonBasis({j: c for j, c in enumerate(r) if c} for r in rows)
    assert len(basis) == sympy_rank(rows)
    for r in rows:
        assert basis.contains({j: c for j, c in enumerate(r) if c})
    # reduced rows vanish at every pivot but their own
    for p, row in zip(basis.pivots, basis.rows()):
        assert row[p] == 1
        assert all(q not in row for q in basis.pivots if q != p)


def test_echelon_reduce_is_canonical():
    b = EchelonBasis([{0: 1, 1: 1}])
    assert b.reduce({0: 1}) == {1: -1}
    assert b.reduce({1: -1}) == {1: -1}
