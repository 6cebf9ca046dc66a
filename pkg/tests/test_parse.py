from __future__ import annotations

import re

import pytest

from conftest import poly
from offsetdeg.errors import ParseError
from offsetdeg.parse import RationalPoly, parse_expression, parse_poly


def test_sum_of_powers_component():
    assert parse_expression("t1^6 + t2^2") == RationalPoly(poly("t1^6 + t2^2"))


def test_rational_constant_division():
    r = parse_expression("-(t2^2)/4 + t1")
    assert (r.num, r.den) == (poly("4*t1 - t2^2"), 4)
    r = parse_expression("3/4*t1 - 1/2")
    assert (r.num, r.den) == (poly("3*t1 - 2"), 4)
    assert parse_expression("(2*t1 + 4)/2") == RationalPoly(poly("t1 + 2"))


def test_negative_exponent_rejected():
    with pytest.raises(ParseError, match="negative exponent"):
        parse_expression("t1^(-1)")
    with pytest.raises(ParseError, match="negative exponent"):
        parse_expression("t1^-2")


def test_exponent_forms():
    assert parse_expression("t1^(3)").num == poly("t1^3")
    assert parse_expression("(t1 + t2)^0").num == poly("1")
    assert parse_expression("-t1^2").num == poly("-t1^2")
    with pytest.raises(ParseError):
        parse_expression("t1^t2")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("2 t1", "implicit multiplication"),
        ("t1 t2", "implicit multiplication"),
        ("(t1)(t2)", "implicit multiplication"),
        ("t1/t2", "non-constant"),
        ("t1/(1 - 1)", "division by zero"),
        ("t0 + t1", "not allowed"),
        ("k1", "not allowed"),
        ("t1 +", "unexpected"),
        ("(t1", "expected ')'"),
        ("t1 $ 2", "unexpected character"),
        ("", "empty"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=re.escape(fragment)):
        parse_expression(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_expression("t1 + 2 t2")
    assert info.value.position == 7


def test_parse_poly_accepts_engine_variables():
    assert parse_poly("k1*t0 - d^2") == poly("-d^2 + t0*k1")
    with pytest.raises(ParseError):
        parse_poly("t1/2")


def test_rational_arithmetic_normalizes():
    a = parse_expression("t1/6")
    b = parse_expression("t1/3")
    s = a + b
    assert (s.num, s.den) == (poly("t1"), 2)
    assert (a - a).num == 0 and (a - a).den == 1
    assert str(parse_expression("t1/2")) == "(t1)/2"
