import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rcg.chevalley import build_algebra
from rcg.exact import matrix_rows
from rcg.group import (
    GenWordSyntaxError,
    NotInBigCell,
    format_genword,
    gauss_decompose,
    gen_E,
    gen_h,
    gen_h_multi,
    gen_n,
    h_character,
    h_coords_from_character,
    identity,
    in_borel,
    is_unipotent,
    nf_coords,
    parse_genword,
    evaluate_genword,
    root_product,
    signed_image,
    torus_element,
)
from rcg.quiver import linear_quiver

A1 = build_algebra(linear_quiver("A", 1))
A2 = build_algebra(linear_quiver("A", 2))
D4 = build_algebra(linear_quiver("D", 4))


def test_a1_generators_by_hand():
    # basis (e_-α, h, e_α); [h, e] = 2e, [e, f] = -h, [h, f] = -2f
    assert matrix_rows(gen_E(A1, (1,), 3).matrix) == [[1, 0, 0], [-3, 1, 0], [9, -6, 1]]
    assert matrix_rows(gen_h(A1, 1, 2).matrix) == [[Fraction(1, 4), 0, 0], [0, 1, 0], [0, 0, 4]]
    assert matrix_rows(gen_n(A1, 1).matrix) == [[0, 0, 1], [0, -1, 0], [1, 0, 0]]
    assert gen_n(A1, 1) ** 2 == identity(A1)
    assert gen_n(A2, 1) ** 2 == gen_h(A2, 1, -1)


def test_n_not_in_big_cell():
    with pytest.raises(NotInBigCell):
        gauss_decompose(gen_n(A1, 1))


def test_signed_images_are_signed_roots():
    for i in (1, 2, 3, 4):
        for r in D4.system.positive_roots:
            s, img = signed_image(D4, gen_n(D4, i), r)
            assert s in (1, -1) and D4.system.is_root(img)


def _rand_unipotent(alg, rng, sign):
    return root_product(alg, [((r if sign > 0 else tuple(-c for c in r)), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
                              for r in rng.sample(alg.system.positive_roots, len(alg.system.positive_roots))])


@pytest.mark.parametrize("alg", [A2, D4], ids=["A2", "D4"])
def test_gauss_round_trip(alg):
    rng = random.Random(5)
    for _ in range(10):
        lo, up = _rand_unipotent(alg, rng, -1), _rand_unipotent(alg, rng, 1)
        hs = [Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice((1, -1)) for _ in range(alg.system.rank)]
        g = lo * gen_h_multi(alg, hs) * up
        res = gauss_decompose(g)
        assert root_product(alg, res.lower_coords) == lo and root_product(alg, res.upper_coords) == up
        assert res.h_matrix == gen_h_multi(alg, hs)
        assert res.h_character == h_character(alg, hs)
        assert in_borel(up, 1) and is_unipotent(up, 1) and is_unipotent(lo, -1)
        assert not in_borel(lo, 1) or lo.is_identity()


def test_nf_coords_in_any_order():
    rng = random.Random(2)
    u = _rand_unipotent(D4, rng, 1)
    order = list(D4.system.positive_roots)
    rng.shuffle(order)
    coords = nf_coords(u, order)
    assert [r for r, _ in coords] == order and root_product(D4, coords) == u


def test_torus_character_round_trip():
    ts = (Fraction(2), Fraction(1, 3), Fraction(5), Fraction(7, 2))
    char = h_character(D4, ts)
    assert torus_element(D4, char) == gen_h_multi(D4, ts)
    assert h_coords_from_character(D4, char) == ts
    # sqrt(2) is not rational: the character of e_α = 2 in A1 needs t² = 2
    assert h_coords_from_character(A1, (Fraction(2),)) is None
    assert h_coords_from_character(A1, (Fraction(4),)) == (Fraction(2),)


def test_genword_parse_format():
    w = parse_genword("+1:2 -r3:-1/2 h2:3 n1 n2^-1 +(1,1):1", A2)
    assert format_genword(w) == "+1:2 -(1,1):-1/2 h2:3 n1 n2^-1 +(1,1):1"
    assert evaluate_genword(A2, parse_genword(format_genword(w), A2)) == evaluate_genword(A2, w)
    for bad, col in [("+1:2 +4:1", 6), ("h1:0", 1), ("+1:2  q", 7), ("+(1,0,1):1", 1)]:
        with pytest.raises(GenWordSyntaxError) as err:
            parse_genword(bad, A2)
        assert err.value.column == col


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=6),
       st.fractions(min_value=-20, max_value=20, max_denominator=6))
def test_one_parameter_subgroups(s, t):
    for r in [(1, 0), (0, 1), (1, 1), (-1, -1)]:
        assert gen_E(A2, r, s) * gen_E(A2, r, t) == gen_E(A2, r, s + t)
    if s and t:
        assert gen_h(A2, 1, s) * gen_h(A2, 1, t) == gen_h(A2, 1, s * t)
