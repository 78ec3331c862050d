from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rcg.exact import (
    AtomRegistry,
    Poly,
    as_rational,
    format_rational,
    matrix_from_rows,
    matrix_rows,
    parse_rational,
    region_variables,
    to_fmpq,
)

VARS = region_variables(3)
SYMS = sympy.symbols("b1 b2 b3")


def test_rationals_are_exact():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(to_fmpq(Fraction(-2, 7))) == Fraction(-2, 7)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_matrix_round_trip():
    rows = [[Fraction(1, 2), 0], [3, Fraction(-1, 5)]]
    assert matrix_rows(matrix_from_rows(rows)) == [[Fraction(1, 2), 0], [3, Fraction(-1, 5)]]


terms = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 3),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=4,
)


def to_sympy(p: Poly):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(s**e for s, e in zip(SYMS, exp)) for exp, c in p.terms.items()))


@settings(max_examples=60, deadline=None)
@given(terms, terms)
def test_poly_arithmetic_matches_sympy(t1, t2):
    p, q = Poly(VARS, t1), Poly(VARS, t2)
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    if not q.is_zero():
        assert (p * q).divexact(q) == p


def test_divexact_reports_inexact():
    b1, b2 = Poly.var(VARS, 0), Poly.var(VARS, 1)
    assert (b1 * b1 - b2 * b2).divexact(b1 - b2) == b1 + b2
    assert (b1 * b1 + b2).divexact(b1 - b2) is None


def test_poly_printing_is_grlex():
    b = [Poly.var(region_variables(6), i) for i in range(6)]
    p = b[0] * b[3] * b[5] - b[0] * b[4] - b[1] * b[5] + b[2]
    assert str(p) == "b1*b4*b6 - b1*b5 - b2*b6 + b3"


def test_atom_fraction_cancels_through_atoms():
    reg = AtomRegistry(region_variables(6))
    b = [reg.var(i) for i in range(6)]
    q = reg.certify(b[3] * b[5] - b[4])
    x = (b[1] * b[5] - b[2]) / q
    assert str(x).endswith("/(b4*b6 - b5)")
    y = b[1] / b[3] + (b[1] * b[4] - b[2] * b[3]) / (b[3] * q)
    assert str(y) == "(b2*b6 - b3)/(b4*b6 - b5)"
    assert y.same_value(x)
    pt = [Fraction(k + 2, 3) for k in range(6)]
    assert y.evaluate(pt) == x.evaluate(pt)


def test_uncertified_inversion_fails():
    reg = AtomRegistry(region_variables(2))
    b1, b2 = reg.var(0), reg.var(1)
    with pytest.raises(ValueError):
        (b1 - b2).invert()
    assert str(1 / (b1 * b2)) == "1/(b1*b2)"


def test_certify_rejects_negative_multiples():
    reg = AtomRegistry(region_variables(2))
    b1, b2 = reg.var(0), reg.var(1)
    reg.certify(b1 - b2)
    with pytest.raises(ValueError):
        reg.certify(b2 - b1)
