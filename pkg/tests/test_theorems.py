import random
from fractions import Fraction as F

import pytest

from rcg.chevalley import build_algebra
from rcg.group import gen_E, identity, in_borel
from rcg.positivity.chain import beta_chain, sample_region
from rcg.positivity.theorems import (
    RegionError,
    cell_element,
    converse_check,
    positive_element,
    region_transport,
    suffix_region,
    verify_flag,
)
from rcg.quiver import all_orientations, leftmost_word, linear_quiver, parse_quiver

A1 = build_algebra(linear_quiver("A", 1))
A2 = build_algebra(parse_quiver("A2: 1>2"))
A3 = build_algebra(linear_quiver("A", 3))
W3 = (1, 2, 3, 1, 2, 1)


def test_rank_one():
    assert positive_element(A1, (1,), [2]) == gen_E(A1, (1,), 2)
    assert verify_flag(A1, (1,), [2], 1) and verify_flag(A1, (1,), [2], -1)
    tr = region_transport(A1, A1.quiver, [F(3)])
    assert tr.point == (3,) and tr.word == (1,)


def test_golden_point_and_boundary():
    b = [4, 2, 1, 1, 1, 2]
    assert verify_flag(A3, W3, b, 1) and verify_flag(A3, W3, b, -1)
    with pytest.raises(RegionError):
        verify_flag(A3, W3, [3, 2, 1, 1, 1, 2])


def test_flag_rejects_wrong_signs():
    # flipping a sign of u⁺ leaves the positive cell: the probe leaves B⁺
    from rcg.group import n_word, root_product
    from rcg.positivity.theorems import simple_product
    from rcg.rootsys import beta_roots

    b = [F(4), F(2), F(1), F(1), F(1), F(2)]
    a0 = beta_chain(A3.system, W3, b).a0
    factors = list(zip(beta_roots(A3.system, W3), b))
    factors[2] = (factors[2][0], -factors[2][1])
    probe = simple_product(A3, W3, a0, -1).inv() * root_product(A3, factors) * n_word(A3, W3, inverse=True)
    assert not in_borel(probe, 1)


def test_converse_on_all_a3_orientations():
    rng = random.Random(0)
    for q in all_orientations("A", 3):
        alg = build_algebra(q)
        w = leftmost_word(q)
        a = [F(rng.randint(1, 9), rng.randint(1, 9)) for _ in w]
        b = converse_check(alg, w, a)
        assert beta_chain(alg.system, w, b).a0 == tuple(a)
        assert verify_flag(alg, w, b, 1) and verify_flag(alg, w, b, -1)


def test_a2_transport():
    tr = region_transport(A2, A2.quiver, [F(1), F(1, 2), F(1)])
    assert tr.word == (2, 1, 2)
    assert beta_chain(A2.system, tr.word, tr.point).member
    assert positive_element(A2, tr.word, tr.point, 1) == tr.element
    # and back again
    back = region_transport(A2, tr.quiver, tr.point)
    assert back.point == (1, F(1, 2), 1) and back.element == tr.element


def test_suffix_region():
    sr = suffix_region(A3, W3, 3, [F(2), F(1), F(1)])
    assert sr.suffix == (1, 2, 1)
    assert sr.chain.betas == [F(1), 1, 1]
    full = suffix_region(A3, W3, 0, [4, 2, 1, 1, 1, 2])
    assert full.chain.member and full.delta == (1,) * 6
    empty = suffix_region(A3, W3, 6, [])
    assert empty.chain.member


def test_cell_element():
    ce = cell_element(A3, W3, 6, [])
    assert ce.b_factor == identity(A3)
    b = sample_region(A3.system, (2, 1), [F(1), F(3)])
    w = (1, 2, 1)
    ce = cell_element(A2, w, 1, b)
    assert in_borel(ce.b_factor, 1) and ce.element * ce.b_factor == ce.lower
    b = [F(4), F(2), F(1), F(1), F(1), F(2)]
    ce = cell_element(A3, W3, 0, b)
    from rcg.positivity.theorems import simple_product

    assert ce.lower == simple_product(A3, W3, beta_chain(A3.system, W3, b).a0, -1)
