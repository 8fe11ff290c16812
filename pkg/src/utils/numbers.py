"""
Number Conversions
Moves values between Fraction, sympy, mpmath and builtin complex
"""
from fractions import Fraction
from typing import Any, Optional

import mpmath
import sympy

from core.numerics_config import get_numerics_config


def to_sympy(value: Any) -> sympy.Expr:
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


def to_mpf(value: Any) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, sympy.Basic):
        return mpmath.mpf(str(sympy.N(value, mpmath.mp.dps + 5)))
    return mpmath.mpf(value)


def to_mpc(value: Any) -> mpmath.mpc:
    if isinstance(value, mpmath.mpc):
        return value
    if isinstance(value, sympy.Basic):
        re, im = sympy.N(value, mpmath.mp.dps + 5).as_real_imag()
        return mpmath.mpc(to_mpf(re), to_mpf(im))
    if isinstance(value, complex):
        return mpmath.mpc(value.real, value.imag)
    return mpmath.mpc(to_mpf(value))


def to_complex(value: Any, dps: Optional[int] = None) -> complex:
    """Builtin complex from a sympy expression or mpmath number"""
    if isinstance(value, sympy.Basic):
        return complex(sympy.N(value, dps or get_numerics_config().mp_dps))
    return complex(value)


def canonical(expr: Any) -> sympy.Expr:
    """a + b i with rationalized denominators, so exact equality is structural"""
    return sympy.expand(sympy.radsimp(sympy.expand_complex(sympy.sympify(expr))))


def relative_deviation(value: complex, reference: complex) -> float:
    return abs(complex(value) - complex(reference)) / max(1.0, abs(complex(reference)))
