import hashlib
from fractions import Fraction
from typing import Union

import sympy


def md5(string):
    return hashlib.md5(string.encode("utf-8")).hexdigest()


def md5_bytes(payload: bytes) -> str:
    return hashlib.md5(payload).hexdigest()


def parse_rational(value: Union[str, int, float, Fraction, sympy.Rational]) -> Fraction:
    """Read '1/3', '0.25', 2 or a float's decimal form as an exact fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, float):
        return Fraction(repr(value))
    text = str(value).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational number: {value!r}") from exc


def format_rational(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
