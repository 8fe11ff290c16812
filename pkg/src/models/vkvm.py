"""
Lattice Volterra-Kac-van Moerbeke
u01 (alpha u11 - 1) = u10 (alpha u - 1) around the background u = 1
"""
from fractions import Fraction
from typing import Any, Mapping, Tuple

from models.base import QuadModel, Shift


class VKVMModel(QuadModel):
    """Discrete Volterra equation; alpha = 1 is the ratio form u01/u10 = (u - 1)/(u11 - 1)"""

    kind = "vkvm"
    background = 1
    param_names = ("alpha",)

    def equation(self, u: Mapping[Shift, Any], params: Mapping[str, Any]) -> Any:
        alpha = params["alpha"]
        return u[(0, 1)] * (alpha * u[(1, 1)] - 1) - u[(1, 0)] * (alpha * u[(0, 0)] - 1)

    def split_equation(self, v: Mapping[Shift, Any]) -> Any:
        """Equation in the translated variable v = u - 1"""
        return self.polynomial.evaluate(v)

    def pq(self) -> Tuple[Fraction, Fraction]:
        alpha = self.params["alpha"]
        return alpha, 1 - alpha
