"""
Wavenumber
Carrier wavenumber fixed by a rational cos k and the sign of sin k
"""
import math
from fractions import Fraction
from typing import Any, Union

import mpmath
import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.exception import DegenerateException, DomainException
from utils.str import format_rational, parse_rational


class Wavenumber(BaseModel):
    """k with cos k rational; admissibility constrains cos k, not k"""

    cos_k: Any = Field(..., description="Exact rational cos k")
    sin_sign: int = Field(default=1, description="Sign of sin k")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("cos_k", mode="before")
    @classmethod
    def _rational_cos(cls, value: Any) -> Fraction:
        try:
            cos_k = parse_rational(value)
        except ValueError as exc:
            raise DomainException(f"cos k must be rational: {value!r}") from exc
        if abs(cos_k) > 1:
            raise DomainException("|cos k| exceeds 1", cos_k=format_rational(cos_k))
        return cos_k

    @field_validator("sin_sign")
    @classmethod
    def _sign(cls, value: int) -> int:
        if value not in (1, -1):
            raise DomainException("sin_sign must be +1 or -1", sin_sign=value)
        return value

    @property
    def sin_squared(self) -> Fraction:
        return 1 - self.cos_k * self.cos_k

    @property
    def k(self) -> float:
        return math.atan2(self.sin_sign * math.sqrt(float(self.sin_squared)), float(self.cos_k))

    @property
    def exact_cos(self) -> sympy.Rational:
        return sympy.Rational(self.cos_k.numerator, self.cos_k.denominator)

    @property
    def exact_sin(self) -> sympy.Expr:
        s2 = self.sin_squared
        return self.sin_sign * sympy.sqrt(sympy.Rational(s2.numerator, s2.denominator))

    @property
    def exact_z(self) -> sympy.Expr:
        return self.exact_cos + sympy.I * self.exact_sin

    @property
    def sin_is_rational(self) -> bool:
        return bool(self.exact_sin.is_Rational)

    def mp_k(self) -> mpmath.mpf:
        return self.sin_sign * mpmath.acos(mpmath.mpf(self.cos_k.numerator) / self.cos_k.denominator)

    def mp_z(self) -> mpmath.mpc:
        return mpmath.expj(self.mp_k())

    def check_carrier(self) -> None:
        """Reductions need sin k != 0"""
        if abs(self.cos_k) == 1:
            raise DegenerateException("k = 0 and k = pi carry no reduction", cos_k=self.label)

    @property
    def label(self) -> str:
        return format_rational(self.cos_k)


def as_wavenumber(value: Union["Wavenumber", Any], sin_sign: int = 1) -> Wavenumber:
    """Accept a Wavenumber or a rational cos k"""
    if isinstance(value, Wavenumber):
        return value
    return Wavenumber(cos_k=value, sin_sign=sin_sign)
