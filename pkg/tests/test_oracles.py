"""Sanity checks on the reference oracles themselves."""

from hypothesis import given, strategies as st

from grpexp.words import Word, commutator

from oracles import f2_normal_form

letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6)


@given(letters, letters, letters)
def test_collector_is_associative(u, v, w):
    assert f2_normal_form(u + v + w) == f2_normal_form(list(f2_word(u, v)) + w)


def f2_word(u, v):
    # reconstruct a word from the normal form of u v, then append
    a, b, c, d, e = f2_normal_form(u + v)
    x1, x2 = Word.gen(1, 2), Word.gen(2, 2)
    cw = commutator(x2.inverse(), x1.inverse())  # b^-1 a^-1 b a
    dw = commutator(cw.inverse(), x1.inverse())
    ew = commutator(cw.inverse(), x2.inverse())
    return (x1 ** a * x2 ** b * cw ** c * dw ** d * ew ** e).letters


@given(letters)
def test_collector_inverses(u):
    assert f2_normal_form(u + [-x for x in reversed(u)]) == (0,) * 5


def test_weight_four_commutators_vanish():
    x1, x2 = Word.gen(1, 2), Word.gen(2, 2)
    c = commutator(x1, x2)
    for a in (x1, x2):
        for b in (x1, x2):
            assert f2_normal_form(commutator(commutator(c, a), b).letters) == (0,) * 5
    assert f2_normal_form(commutator(c, x1).letters) != (0,) * 5
