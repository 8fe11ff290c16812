"""
Reduced Equation
Coefficients of the discrete NLS-type far-field equation
"""
import logging
import math
from typing import Any, Dict, Literal, Mapping, Optional

import sympy
from pydantic import BaseModel, ConfigDict, Field, computed_field

from models import CarrierWave, LatticeModel
from reduction.scales import ScaleTriple
from reduction.wavenumber import Wavenumber
from utils.numbers import canonical, to_complex

logger = logging.getLogger(__name__)


class ReducedEquation(BaseModel):
    """
    phi[m2+1] = phi - (c1 W + c2 D + cubic |phi|^2 phi + nonlocal psi0 phi)

    with W = phi[n2+2] - 2 phi + phi[n2-2], D = phi[n2+1] - 2 phi + phi[n2-1],
    and psi0[n2] + psi0[n2+1] = p2 (conj(phi) phi[n2+1] + phi conj(phi[n2+1]))
    when the mean-field term is present.
    """

    model: str = Field(..., description="Model kind")
    params: Dict[str, str] = Field(..., description="Exact model parameters")
    wavenumber: Wavenumber
    carrier: CarrierWave
    scales: ScaleTriple

    c1: complex = Field(..., description="Second-neighbour dispersion, map normalization")
    c2: complex = Field(..., description="First-neighbour dispersion, map normalization")
    cubic: complex = Field(..., description="Local cubic coefficient with psi2 = p1 phi^2 merged in")
    cubic_local: Optional[complex] = Field(default=None, description="Pure |phi|^2 phi part before merging")
    harmonic2_coupling: Optional[complex] = Field(default=None, description="Coefficient of psi2 conj(phi)")
    nonlocal_coupling: Optional[complex] = Field(default=None, description="Coefficient of psi0 phi")
    p1: complex = Field(..., description="psi2 = p1 phi^2")
    p2: Optional[complex] = Field(default=None, description="Constant of the psi0 relation")
    psi0_order: Optional[int] = Field(default=None, description="Order at which psi0 is determined")

    reduced_variable: Literal["difference", "sum"] = Field(default="difference")
    source: Literal["closed_form", "engine"] = Field(...)
    printed: Dict[str, complex] = Field(default_factory=dict, description="Alternative printed forms")
    exact: Dict[str, Any] = Field(default_factory=dict, description="Exact sympy values")
    diagnostics: Dict[str, float] = Field(default_factory=dict, description="Engine residual magnitudes")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @computed_field
    @property
    def C1(self) -> complex:
        return -1j * self.c1

    @computed_field
    @property
    def C2(self) -> complex:
        return -1j * self.c2

    @computed_field
    @property
    def C3(self) -> complex:
        """-i cubic / 2; reported coefficient, half the evolution coefficient"""
        return -0.5j * self.cubic

    @computed_field
    @property
    def C3_evolution(self) -> complex:
        """Coefficient of phi |phi|^2 in i dphi/dt; equals 2 C3"""
        return -1j * self.cubic

    @computed_field
    @property
    def continuum(self) -> complex:
        """4 C1 + C2, the dispersion coefficient of the continuum limit"""
        return 4 * self.C1 + self.C2

    @property
    def has_nonlocal(self) -> bool:
        return (
            self.nonlocal_coupling is not None
            and self.p2 is not None
            and abs(self.nonlocal_coupling) > 0
        )

    def plane_wave_factor(self, kappa: float, amplitude: float) -> complex:
        """
        One-step multiplier of A exp(i kappa n2) under the local map:
        1 - i [2 C1 (cos 2 kappa - 1) + 2 C2 (cos kappa - 1) + C3_evolution A^2]
        """
        w = 2 * (math.cos(2 * kappa) - 1)
        d = 2 * (math.cos(kappa) - 1)
        return 1 - (self.c1 * w + self.c2 * d + self.cubic * amplitude * amplitude)


def build_reduced(model: LatticeModel, wavenumber: Wavenumber, scales: ScaleTriple,
                  values: Mapping[str, Any], source: Literal["closed_form", "engine"],
                  printed: Optional[Mapping[str, Any]] = None,
                  diagnostics: Optional[Mapping[str, float]] = None,
                  reduced_variable: Literal["difference", "sum"] = "difference",
                  psi0_order: Optional[int] = None) -> ReducedEquation:
    """
    Assemble a ReducedEquation from exact or numeric coefficient values.

    Args:
        values: c1, c2, cubic, p1 and optionally cubic_local,
            harmonic2_coupling, nonlocal_coupling, p2; sympy values are
            kept exactly alongside their numeric form
        printed: Alternative printed forms for cross-checks
    """
    numeric = {name: to_complex(value) for name, value in values.items() if value is not None}
    exact: Dict[str, Any] = {}
    if source == "closed_form":
        exact = {name: canonical(value) for name, value in values.items() if value is not None}
        exact["C1"] = canonical(-sympy.I * exact["c1"])
        exact["C2"] = canonical(-sympy.I * exact["c2"])
        exact["C3"] = canonical(-sympy.I * exact["cubic"] / 2)
        exact["C3_evolution"] = canonical(-sympy.I * exact["cubic"])
        exact["continuum"] = canonical(4 * exact["C1"] + exact["C2"])

    reduced = ReducedEquation(
        model=model.kind,
        params=model.describe_params(),
        wavenumber=wavenumber,
        carrier=model.dispersion(wavenumber.k),
        scales=scales,
        c1=numeric["c1"],
        c2=numeric["c2"],
        cubic=numeric["cubic"],
        cubic_local=numeric.get("cubic_local"),
        harmonic2_coupling=numeric.get("harmonic2_coupling"),
        nonlocal_coupling=numeric.get("nonlocal_coupling"),
        p1=numeric["p1"],
        p2=numeric.get("p2"),
        psi0_order=psi0_order,
        reduced_variable=reduced_variable,
        source=source,
        printed={name: to_complex(value) for name, value in (printed or {}).items()},
        exact=exact,
        diagnostics=dict(diagnostics or {}),
    )
    logger.debug(
        f"Reduced {model.kind} ({source}) at cos k = {wavenumber.label}: "
        f"C1={reduced.C1:.6g}, C2={reduced.C2:.6g}, C3={reduced.C3:.6g}"
    )
    return reduced
