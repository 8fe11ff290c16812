"""
Slowly Varying Samples
Order detection for lattice functions with a vanishing higher difference
"""
import logging
from fractions import Fraction
from numbers import Rational
from typing import Any, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.exception import SlowOrderUndeterminedException

logger = logging.getLogger(__name__)

SampleValue = Union[int, Fraction, float]


class SlowFunctionSample(BaseModel):
    """Values of a lattice function on consecutive sites"""

    values: List[Any] = Field(..., min_length=1, description="Values on consecutive sites")
    declared_order: Optional[int] = Field(default=None, ge=0, description="Declared slow order p")

    model_config = ConfigDict(frozen=True)

    @field_validator("values", mode="before")
    @classmethod
    def _coerce(cls, values: Sequence) -> List[SampleValue]:
        coerced = []
        for value in values:
            if isinstance(value, (int, Fraction, float)):
                coerced.append(value)
            elif isinstance(value, Rational):
                coerced.append(Fraction(int(value.numerator), int(value.denominator)))
            else:
                coerced.append(float(value))
        return coerced

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.values)

    def as_array(self) -> np.ndarray:
        if self.is_exact:
            return np.array([Fraction(v) for v in self.values], dtype=object)
        return np.asarray(self.values, dtype=float)

    def difference(self, order: int) -> np.ndarray:
        """Forward difference of the given order"""
        return np.diff(self.as_array(), n=order) if order else self.as_array()

    def satisfies_declared_order(self, tol: float = 1e-12) -> bool:
        if self.declared_order is None:
            return True
        top = self.difference(self.declared_order + 1)
        return _vanishes(top, self.is_exact, tol, _scale(self.as_array()))


def _scale(values: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(values.astype(float))))) if len(values) else 1.0


def _vanishes(diff: np.ndarray, exact: bool, tol: float, scale: float) -> bool:
    if exact:
        return all(v == 0 for v in diff)
    return bool(np.all(np.abs(diff) <= tol * scale))


def slow_order(sample: Union[SlowFunctionSample, Sequence[SampleValue]], tol: float = 1e-9) -> int:
    """
    Smallest p such that the (p+1)-th difference vanishes.

    Exact samples are tested for exact zeros; float samples against
    tol relative to the sample magnitude (differences amplify rounding
    by up to 2^p).

    Args:
        sample: Sample or plain sequence of values
        tol: Relative tolerance in float mode

    Returns:
        Slow order p
    """
    if not isinstance(sample, SlowFunctionSample):
        sample = SlowFunctionSample(values=list(sample))

    values = sample.as_array()
    exact = sample.is_exact
    scale = _scale(values)

    # Delta^{p+1} needs at least one entry, so p <= len - 2
    for p in range(len(values) - 1):
        top = np.diff(values, n=p + 1)
        if _vanishes(top, exact, tol * 2 ** (p + 1), scale):
            return p

    raise SlowOrderUndeterminedException(
        "No vanishing difference within the sample length",
        length=len(values),
    )
