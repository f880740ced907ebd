from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grpexp.errors import DomainError
from grpexp.liealg import (
    LiePoly,
    derived_quotient_dims,
    dynkin_project,
    is_lyndon,
    lie_bracket,
    lie_embed,
    lie_ideal_build,
    lie_quotient_dims,
    lyndon_basis,
    pure_braid_lie_relations,
    standard_factorization,
    surface_lie_relations,
)
from grpexp.ncseries import NCSeries, is_primitive
from grpexp.ranks import chen_free, witt_free


def rotations_smaller(w):
    return all(w < w[k:] + w[:k] for k in range(1, len(w)))


def test_lyndon_examples():
    assert lyndon_basis(2, 1) == ((1,), (2,))
    assert lyndon_basis(2, 3) == ((1, 1, 2), (1, 2, 2))
    assert lyndon_basis(1, 2) == ()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lyndon_counts_are_witt_numbers(n):
    assert [len(lyndon_basis(n, d)) for d in range(1, 9)] == list(witt_free(n, 8).values)


def test_lyndon_definition_and_factorization():
    for d in range(1, 7):
        for w in lyndon_basis(3, d):
            assert is_lyndon(w) and rotations_smaller(w)
            if d >= 2:
                u, v = standard_factorization(w)
                assert u + v == w and is_lyndon(u) and is_lyndon(v)
                # v is the longest proper Lyndon suffix
                assert all(not is_lyndon(w[k:]) for k in range(1, len(u)))
    assert not is_lyndon((2, 1)) and not is_lyndon((1, 1))


def test_embed_examples():
    assert lie_embed(LiePoly.basis((1, 2), 2), 3) == NCSeries(2, 3, {(1, 2): 1, (2, 1): -1})
    e = lie_embed(LiePoly.basis((1, 1, 2), 2), 3)
    assert e == NCSeries(2, 3, {(1, 1, 2): 1, (1, 2, 1): -2, (2, 1, 1): 1})
    assert lie_embed(LiePoly.gen(1, 2), 1) == NCSeries.gen(1, 2, 1)
    with pytest.raises(DomainError):
        lie_embed(LiePoly.basis((1, 1, 2), 2), 2)


def test_dynkin_examples():
    assert dynkin_project(NCSeries(2, 2, {(1, 2): 1, (2, 1): -1})) == LiePoly.basis((1, 2), 2)
    assert dynkin_project(NCSeries.gen(1, 2, 3)) == LiePoly.gen(1, 2)
    with pytest.raises(DomainError):
        dynkin_project(NCSeries(2, 2, {(1, 2): 1}))


def test_bracket_examples():
    x1, x2 = LiePoly.gen(1, 2), LiePoly.gen(2, 2)
    assert lie_bracket(x1, x2) == LiePoly.basis((1, 2), 2)
    p = x1 + lie_bracket(x1, x2)
    assert lie_bracket(p, p).is_zero()
    assert lie_bracket(x1, lie_bracket(x1, x2)) == LiePoly.basis((1, 1, 2), 2)
    with pytest.raises(DomainError):
        lie_bracket(x1, LiePoly.gen(1, 3))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dynkin_roundtrip_on_basis(n):
    for d in range(1, 7):
        for w in lyndon_basis(n, d):
            p = LiePoly.basis(w, n)
            s = lie_embed(p, 6)
            assert is_primitive(s)
            assert dynkin_project(s) == p


def lie_polys(rank=3, max_deg=4):
    words = st.integers(1, max_deg).flatmap(lambda d: st.sampled_from(lyndon_basis(rank, d)) if lyndon_basis(rank, d) else st.just((1,)))
    coeffs = st.fractions(min_value=-2, max_value=2, max_denominator=2)
    return st.dictionaries(words, coeffs, max_size=3).map(lambda t: LiePoly(rank, t))


@settings(max_examples=30, deadline=None)
@given(lie_polys(max_deg=2), lie_polys(max_deg=2), lie_polys(max_deg=2))
def test_jacobi_and_antisymmetry(a, b, c):
    assert lie_bracket(a, b) == -lie_bracket(b, a)
    jac = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) + lie_bracket(c, lie_bracket(a, b))
    assert jac.is_zero()


@settings(max_examples=30, deadline=None)
@given(lie_polys())
def test_json_roundtrip(p):
    assert LiePoly.from_json(p.to_json()) == p


def test_quotient_examples():
    assert lie_quotient_dims(lie_ideal_build([LiePoly.basis((1, 2), 2)], 4)) == [2, 0, 0, 0]
    assert lie_quotient_dims(lie_ideal_build(pure_braid_lie_relations(3), 4)) == [3, 1, 2, 3]
    assert lie_quotient_dims(lie_ideal_build(surface_lie_relations(2), 4)) == [4, 5, 16, 45]
    assert lie_quotient_dims(lie_ideal_build([], 5, rank=3)) == list(witt_free(3, 5).values)
    with pytest.raises(DomainError):
        lie_ideal_build([LiePoly.gen(1, 2) + LiePoly.basis((1, 2), 2)], 3)


def test_ideal_membership():
    I = lie_ideal_build(surface_lie_relations(2), 4)
    r = surface_lie_relations(2)[0]
    assert I.contains(lie_bracket(LiePoly.gen(3, 4), r))
    assert not I.contains(LiePoly.basis((1, 2), 4))
    assert I.reduce(r).is_zero()


def test_derived_quotient_examples():
    assert derived_quotient_dims(lie_ideal_build([], 5, rank=2), 2) == [2, 1, 2, 3, 4]
    assert derived_quotient_dims(lie_ideal_build([], 4, rank=3), 2)[3] == 15
    for rels in (pure_braid_lie_relations(3), surface_lie_relations(2)):
        I = lie_ideal_build(rels, 4)
        assert derived_quotient_dims(I, 2)[:3] == lie_quotient_dims(I)[:3]
    with pytest.raises(DomainError):
        derived_quotient_dims(lie_ideal_build([], 3, rank=2), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chen_ranks_from_linear_algebra(n):
    assert derived_quotient_dims(lie_ideal_build([], 5, rank=n), 2) == list(chen_free(n, 5).values)


def test_third_derived_quotient_is_exact_in_low_degree():
    # the third derived ideal of a free Lie algebra starts in degree 8
    free = lie_ideal_build([], 6, rank=2)
    d3 = derived_quotient_dims(free, 3)
    assert d3 == [len(lyndon_basis(2, d)) for d in range(1, 7)]
