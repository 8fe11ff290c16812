"""
Non-integrable Lattice KdV
u[n,m+1] = u[n,m-1] + (alpha/4)(u[n+3] - 3u[n+1] + 3u[n-1] - u[n-3]) + beta (u[n+1]^2 - u[n-1]^2)
"""
import cmath
import math
from typing import Any, Mapping

import numpy as np

from core.exception import DegenerateException, RealityException
from models.base import LatticeModel, Shift


class NiKdVModel(LatticeModel):
    """Explicit three-level scheme on a periodic row"""

    kind = "nikdv"
    background = 0
    shifts = ((0, 1), (0, -1), (1, 0), (-1, 0), (3, 0), (-3, 0))
    param_names = ("alpha", "beta")

    def equation(self, u: Mapping[Shift, Any], params: Mapping[str, Any]) -> Any:
        alpha, beta = params["alpha"], params["beta"]
        dispersive = u[(3, 0)] - 3 * u[(1, 0)] + 3 * u[(-1, 0)] - u[(-3, 0)]
        return (u[(0, 1)] - u[(0, -1)] - alpha * dispersive / 4
                - beta * (u[(1, 0)] * u[(1, 0)] - u[(-1, 0)] * u[(-1, 0)]))

    def check_reality(self, k: float) -> None:
        value = float(self.params["alpha"]) * math.sin(k) ** 3
        if abs(value) > 1.0:
            raise RealityException(
                "nikdv: |alpha sin^3 k| exceeds 1",
                k=k, alpha_sin3=value,
            )

    def Omega_of(self, k: float) -> complex:
        self.check_reality(k)
        omega = math.asin(max(-1.0, min(1.0, float(self.params["alpha"]) * math.sin(k) ** 3)))
        return cmath.exp(-1j * omega)

    def group_velocity(self, k: float) -> float:
        alpha = float(self.params["alpha"])
        cos_omega = math.cos(-cmath.phase(self.Omega_of(k)))
        if cos_omega == 0:
            raise DegenerateException("nikdv: group velocity undefined at cos omega = 0", k=k)
        return 3 * alpha * math.sin(k) ** 2 * math.cos(k) / cos_omega

    def step_rows(self, current: np.ndarray, previous: np.ndarray) -> np.ndarray:
        """Row m+1 from rows m and m-1, periodic in n"""
        alpha, beta = float(self.params["alpha"]), float(self.params["beta"])
        if current.shape != previous.shape or current.ndim != 1:
            raise DegenerateException("nikdv rows must be 1-D and of equal length")
        if current.size < 7:
            raise DegenerateException("nikdv rows need period >= 7", period=current.size)
        ahead = lambda j: np.roll(current, -j)
        dispersive = ahead(3) - 3 * ahead(1) + 3 * ahead(-1) - ahead(-3)
        return previous + alpha / 4 * dispersive + beta * (ahead(1) ** 2 - ahead(-1) ** 2)


def step_nikdv(model: NiKdVModel, current: np.ndarray, previous: np.ndarray) -> np.ndarray:
    """
    Explicit nikdv step.

    Args:
        model: Non-integrable KdV model
        current: Row m
        previous: Row m - 1

    Returns:
        Row m + 1
    """
    return model.step_rows(np.asarray(current), np.asarray(previous))
