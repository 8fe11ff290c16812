from fractions import Fraction

import pytest
import sympy

from utils.str import format_rational, md5, parse_rational


def test_md5_hash_matches_known_value():
    expected = "900150983cd24fb0d6963f7d28e17f72"
    assert md5("abc") == expected


def test_parse_rational_forms():
    assert parse_rational("1/3") == Fraction(1, 3)
    assert parse_rational(" -2 ") == Fraction(-2)
    assert parse_rational(0.25) == Fraction(1, 4)
    assert parse_rational(0.3) == Fraction(3, 10)
    assert parse_rational(sympy.Rational(-5, 7)) == Fraction(-5, 7)


def test_parse_rational_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rational("one third")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_format_rational():
    assert format_rational(Fraction(4)) == "4"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
