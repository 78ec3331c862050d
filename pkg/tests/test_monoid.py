import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rcg.chevalley import build_algebra
from rcg.group import evaluate_genword, gen_E, gen_h, parse_genword
from rcg.positivity.monoid import MonoidError, braid, canonical_part, decompose_nonneg, flip
from rcg.positivity.theorems import simple_product
from rcg.quiver import linear_quiver
from rcg.verify import random_monoid_word

A1 = build_algebra(linear_quiver("A", 1))
A2 = build_algebra(linear_quiver("A", 2))
D4 = build_algebra(linear_quiver("D", 4))

pos = st.fractions(min_value=F(1, 10), max_value=10, max_denominator=10)


def test_rank_one_flip():
    d = decompose_nonneg(A1, parse_genword("+1:1 h1:1 -1:-1", A1))
    assert d.minus.cell == (1,) and d.minus.coords == (F(1, 2),)
    assert d.h == (F(2),)
    assert d.plus.cell == (1,) and d.plus.coords == (F(1, 2),)


def test_braid_normalization():
    d = decompose_nonneg(A2, parse_genword("+1:1 +2:1 +1:1", A2))
    assert d.plus.cell == (1, 2, 1) and d.plus.coords == (1, 1, 1)
    # the (2,1,2) image of the same element
    assert braid(F(1), F(1), F(1)) == (F(1, 2), F(2), F(1, 2))
    d = decompose_nonneg(A2, parse_genword("+2:1/2 +1:2 +2:1/2", A2))
    assert d.plus.cell == (1, 2, 1) and d.plus.coords == (1, 1, 1)


def test_already_normal():
    text = "-1:-2 -2:-1 h1:3 h2:1/2 +1:1 +2:5"
    d = decompose_nonneg(A2, parse_genword(text, A2))
    assert d.minus.cell == (1, 2) and d.minus.coords == (2, 1)
    assert d.h == (3, F(1, 2)) and d.plus.coords == (1, 5)


def test_rejects_non_monoid_letters():
    for text in ["+1:-1", "-1:1", "h1:-2", "n1", "+(1,1):1"]:
        with pytest.raises(MonoidError):
            decompose_nonneg(A2, parse_genword(text, A2))


@settings(max_examples=30, deadline=None)
@given(pos, pos, pos)
def test_flip_identity(a, b, c):
    lhs = gen_E(A1, (1,), a) * gen_h(A1, 1, b) * gen_E(A1, (-1,), -c)
    c2, b2, a2 = flip(a, b, c)
    assert lhs == gen_E(A1, (-1,), -c2) * gen_h(A1, 1, b2) * gen_E(A1, (1,), a2)


@settings(max_examples=30, deadline=None)
@given(pos, pos, pos)
def test_braid_identity(a, b, c):
    assert simple_product(A2, (1, 2, 1), [a, b, c], 1) == simple_product(A2, (2, 1, 2), braid(a, b, c), 1)
    assert simple_product(A2, (1, 2, 1), [a, b, c], -1) == simple_product(A2, (2, 1, 2), braid(a, b, c), -1)


def test_canonical_part_absorbs_repeats():
    rs = A2.system
    word, params = canonical_part(rs, [1, 1, 2, 1, 2], [F(1), F(1), F(1), F(1), F(1)])
    assert word == (1, 2, 1)
    assert simple_product(A2, word, params, 1) == simple_product(A2, (1, 1, 2, 1, 2), [1] * 5, 1)


def test_random_words_d4():
    rng = random.Random(8)
    for _ in range(10):
        w = random_monoid_word(rng, D4.system, 20)
        d = decompose_nonneg(D4, w)
        assert d.element == evaluate_genword(D4, w) and d.h_positive
        js = d.to_json()
        assert set(js) == {"minus", "h", "plus"}
