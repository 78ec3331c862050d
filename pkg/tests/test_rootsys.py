import pytest
from hypothesis import given, settings, strategies as st

from rcg.rootsys import (
    Move,
    RootSystemError,
    apply_move,
    applicable_moves,
    beta_roots,
    build_root_system,
    demazure_and_complete,
    demazure_product,
    element_from_word,
    is_reduced,
    lexmin_reduced_word,
    longest_word,
    move_path,
    opposition,
    parse_type,
    parse_word,
    reduced_words,
    root_system,
)

COUNTS = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 5): 15, ("D", 4): 12, ("D", 5): 20,
          ("E", 6): 36, ("E", 7): 63, ("E", 8): 120}


@pytest.mark.parametrize("letter,rank", sorted(COUNTS))
def test_positive_root_counts(letter, rank):
    rs = build_root_system(letter, rank)
    assert rs.positive_count == COUNTS[(letter, rank)]
    assert len(longest_word(rs)) == rs.positive_count
    assert set(beta_roots(rs, longest_word(rs))) == set(rs.positive_roots)


def test_highest_roots():
    assert root_system("A3").highest_root() == (1, 1, 1)
    assert root_system("D4").highest_root() == (1, 2, 1, 1)
    assert root_system("E8").highest_root() == (2, 3, 4, 6, 5, 4, 3, 2)


def test_reduced_word_counts():
    # the number of reduced words of w0: 16 for A3, 2316 for D4
    assert len(reduced_words(root_system("A3"), (1, 2, 1, 3, 2, 1))) == 16
    assert len(reduced_words(root_system("D4"), longest_word(root_system("D4")))) == 2316


def test_opposition():
    rs = root_system("A4")
    assert [opposition(rs, i) for i in range(1, 5)] == [4, 3, 2, 1]
    rs = root_system("D4")
    assert [opposition(rs, i) for i in range(1, 5)] == [1, 2, 3, 4]
    rs = root_system("E6")
    assert sorted(opposition(rs, i) for i in range(1, 7)) == list(range(1, 7))
    assert opposition(rs, 1) != 1


def test_demazure():
    rs = root_system("A2")
    assert demazure_product(rs, (1, 1)) == (1,)
    res = demazure_and_complete(rs, (1, 1))
    assert res.demazure == (1,) and is_reduced(rs, res.prefix_to_w0 + res.demazure)
    assert demazure_product(rs, (1, 2, 1, 2, 1)) == (1, 2, 1)


def test_moves_and_paths():
    rs = root_system("A3")
    w = (1, 2, 3, 1, 2, 1)
    assert Move("commutation", 2) in applicable_moves(rs, w)
    assert apply_move(rs, w, Move("commutation", 2)) == (1, 2, 1, 3, 2, 1)
    with pytest.raises(RootSystemError):
        apply_move(rs, w, Move("braid", 0))
    target = lexmin_reduced_word(rs, element_from_word(rs, w))
    word = w
    for mv in move_path(rs, w, target):
        word = apply_move(rs, word, mv)
    assert word == target


def test_parsers():
    assert parse_type("D_4") == ("D", 4)
    with pytest.raises(RootSystemError):
        parse_type("B3")
    with pytest.raises(RootSystemError):
        parse_type("D3")
    assert parse_word("1, 2,1") == (1, 2, 1)
    with pytest.raises(ValueError, match="column 5"):
        parse_word("1,2,x")
    with pytest.raises(ValueError, match="out of range"):
        parse_word("1,5", 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 4), max_size=14))
def test_demazure_is_reduced_and_absorbs(word):
    rs = root_system("D4")
    d = demazure_product(rs, word)
    assert is_reduced(rs, d)
    # the 0-Hecke product is idempotent on letters and monotone
    assert demazure_product(rs, tuple(word) + tuple(word)) == demazure_product(rs, d + d)
    assert len(d) <= rs.positive_count
