"""
Lattice mKdV
p (u u01 - u10 u11) - q (u u10 - u01 u11) = 0 around the background u = 1
"""
from fractions import Fraction
from typing import Any, Mapping, Tuple

from core.exception import DegenerateException
from models.base import QuadModel, Shift


class MKdVModel(QuadModel):
    """Discrete modified KdV equation in its multiplicative form"""

    kind = "mkdv"
    background = 1
    param_names = ("p", "q")

    def validate(self) -> None:
        if self.params["p"] == 0 or self.params["q"] == 0:
            raise DegenerateException("mkdv requires p != 0 and q != 0", **self.describe_params())

    def equation(self, u: Mapping[Shift, Any], params: Mapping[str, Any]) -> Any:
        p, q = params["p"], params["q"]
        return (p * (u[(0, 0)] * u[(0, 1)] - u[(1, 0)] * u[(1, 1)])
                - q * (u[(0, 0)] * u[(1, 0)] - u[(0, 1)] * u[(1, 1)]))

    def pq(self) -> Tuple[Fraction, Fraction]:
        p, q = self.params["p"], self.params["q"]
        return p - q, p + q
