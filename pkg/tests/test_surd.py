from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliquedensity.surd import (
    Surd,
    as_number,
    compare,
    floor,
    format_decimal,
    format_display,
    format_exact,
    parse_number,
    sign,
    split_square,
    sqrt,
    to_decimal,
    try_sqrt,
)

mpmath.mp.dps = 60

small = st.fractions(min_value=-20, max_value=20, max_denominator=30)
radicand = st.integers(min_value=2, max_value=40)


def mp(x):
    """Independent high-precision evaluation through the exact string form."""
    text = format_exact(x).replace("sqrt", "mpmath.sqrt")
    return eval(text.replace("/", "*mpmath.mpf(1)/"), {"mpmath": mpmath})


@st.composite
def surds(draw):
    a, b, d = draw(small), draw(small), draw(radicand)
    return a + b * sqrt(d)


def test_split_square():
    assert split_square(72) == (6, 2)
    assert split_square(49) == (7, 1)
    assert split_square(1) == (1, 1)


def test_perfect_squares_normalise():
    assert sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert isinstance(sqrt(Fraction(9, 4)), Fraction)
    assert sqrt(8) == 2 * sqrt(2)
    assert try_sqrt(sqrt(2)) is None
    assert sqrt(sqrt(2) ** 2) == sqrt(2)


def test_denesting_and_nested_values():
    assert sqrt(5 + 2 * sqrt(6)) == sqrt(2) + sqrt(3)
    x = sqrt(2 + sqrt(3))
    assert x * x == 2 + sqrt(3)
    assert float(x) == pytest.approx(1.9318516525781366)


def test_parse_and_format():
    assert parse_number("1/4+1/60*sqrt(15)") == Fraction(1, 4) + Fraction(1, 60) * sqrt(15)
    assert parse_number("-3/7") == Fraction(-3, 7)
    assert parse_number("(1+sqrt(2))*(1-sqrt(2))") == -1
    x = Fraction(1, 4) - Fraction(1, 20) * sqrt(15)
    assert format_exact(x) == "1/4-1/20*sqrt(15)"
    assert format_display(x) == "1/4 + (-1/20)*sqrt(15)"
    with pytest.raises(ValueError):
        parse_number("1/4+")


def test_decimal_formatting_half_even():
    assert format_decimal(Fraction(1, 3)) == "0.333333333333"
    assert format_decimal(Fraction(2, 3)) == "0.666666666667"
    assert format_decimal(Fraction(1, 8 * 10**11)) == "1.25e-12"
    assert format_decimal(Fraction(1, 8), 2) == "0.12"
    assert format_decimal(Fraction(3, 8), 2) == "0.38"
    assert format_decimal(Fraction(1250004, 10**7), 2) == "0.13"
    assert format_decimal(Fraction(10**30 + 1, 8 * 10**30), 2) == "0.13"
    assert format_decimal(sqrt(2)) == "1.41421356237"


def test_floor_exact():
    assert floor(sqrt(17)) == 4
    assert floor(-sqrt(2)) == -2
    assert floor(Fraction(7, 2)) == 3
    assert floor(4 + 0 * sqrt(3)) == 4


def test_as_number():
    assert as_number(3) == Fraction(3)
    assert as_number("7/10") == Fraction(7, 10)
    with pytest.raises(TypeError):
        as_number(0.5)


@given(surds(), surds())
def test_field_operations_match_high_precision(x, y):
    assert abs(mp(x + y) - (mp(x) + mp(y))) < mpmath.mpf(10) ** -40
    assert abs(mp(x * y) - mp(x) * mp(y)) < mpmath.mpf(10) ** -40
    if y != 0:
        assert abs(mp(x / y) - mp(x) / mp(y)) < mpmath.mpf(10) ** -30


@given(surds(), surds())
def test_exact_comparison_agrees_with_high_precision(x, y):
    diff = mp(x) - mp(y)
    if abs(diff) > mpmath.mpf(10) ** -40:
        assert compare(x, y) == (1 if diff > 0 else -1)
    else:
        assert compare(x, y) == 0
        assert x == y


@given(surds())
def test_sign_and_square_root(x):
    assert sign(x * x) >= 0
    root = sqrt(x * x)
    assert root == abs(x)
    assert root * root == x * x


@given(surds())
def test_format_parse_round_trip(x):
    assert parse_number(format_exact(x)) == x
    assert hash(parse_number(format_exact(x))) == hash(x)


@given(surds())
def test_decimal_is_accurate(x):
    assert abs(mpmath.mpf(str(to_decimal(x, 30))) - mp(x)) < mpmath.mpf(10) ** -25


@given(surds(), st.integers(min_value=2, max_value=30))
def test_nested_arithmetic(x, d):
    y = x + sqrt(d + sqrt(2))
    assert (y - x) ** 2 == d + sqrt(2)
    assert y - y == 0


def test_surd_constructor_collapses_zero_part():
    assert Surd(Fraction(1), Fraction(0), Fraction(5)) == 1
