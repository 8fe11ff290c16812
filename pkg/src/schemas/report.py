"""
Report Schemas
JSON report records emitted by the CLI.
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from reduction.reduced import ReducedEquation
from simulate.far_field import ConvergenceReport


class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, value: Any) -> "ComplexValue":
        z = complex(value)
        return cls(re=z.real, im=z.imag)


def _maybe(value: Optional[complex]) -> Optional[ComplexValue]:
    return None if value is None else ComplexValue.of(value)


class CoefficientReport(BaseModel):
    """Reduced-equation coefficients at one carrier"""
    model: str = Field(..., description="Model kind")
    params: Dict[str, str] = Field(..., description="Exact model parameters")
    cos_k: str
    sin_sign: int
    M1: str
    M2: str
    S: ComplexValue
    S_rho: float = Field(..., description="|S|")
    S_theta: float = Field(..., description="Phase of S in (-pi, pi]; shifts by pi across branches")
    branch: int
    source: str = Field(..., description="closed_form or engine")
    reduced_variable: str
    C1: ComplexValue
    C2: ComplexValue
    C3: ComplexValue
    C3_evolution: ComplexValue = Field(..., description="Coefficient of phi |phi|^2 in the evolution, 2 C3")
    continuum_coeff: ComplexValue = Field(..., description="4 C1 + C2")
    c1: ComplexValue
    c2: ComplexValue
    cubic: ComplexValue
    p1: ComplexValue
    p2: Optional[ComplexValue] = None
    nonlocal_coupling: Optional[ComplexValue] = None
    psi0_order: Optional[int] = None
    printed: Dict[str, ComplexValue] = Field(default_factory=dict, description="Alternative printed forms")
    exact: Dict[str, str] = Field(default_factory=dict, description="Exact values as sympy strings")
    diagnostics: Dict[str, float] = Field(default_factory=dict)

    @classmethod
    def from_reduced(cls, reduced: ReducedEquation) -> "CoefficientReport":
        return cls(
            model=reduced.model,
            params=reduced.params,
            cos_k=reduced.wavenumber.label,
            sin_sign=reduced.wavenumber.sin_sign,
            M1=str(reduced.scales.M1),
            M2=str(reduced.scales.M2),
            S=ComplexValue.of(reduced.scales.S),
            S_rho=reduced.scales.rho,
            S_theta=reduced.scales.theta,
            branch=reduced.scales.branch,
            source=reduced.source,
            reduced_variable=reduced.reduced_variable,
            C1=ComplexValue.of(reduced.C1),
            C2=ComplexValue.of(reduced.C2),
            C3=ComplexValue.of(reduced.C3),
            C3_evolution=ComplexValue.of(reduced.C3_evolution),
            continuum_coeff=ComplexValue.of(reduced.continuum),
            c1=ComplexValue.of(reduced.c1),
            c2=ComplexValue.of(reduced.c2),
            cubic=ComplexValue.of(reduced.cubic),
            p1=ComplexValue.of(reduced.p1),
            p2=_maybe(reduced.p2),
            nonlocal_coupling=_maybe(reduced.nonlocal_coupling),
            psi0_order=reduced.psi0_order,
            printed={name: ComplexValue.of(value) for name, value in reduced.printed.items()},
            exact={name: str(value) for name, value in reduced.exact.items()},
            diagnostics=dict(reduced.diagnostics),
        )


class VerificationSummary(BaseModel):
    seed: int
    samples: int
    tolerance: float
    max_deviation: float
    worst_by_coefficient: Dict[str, float] = Field(default_factory=dict)
    worst_printed: Dict[str, float] = Field(default_factory=dict)


class DerivationReport(BaseModel):
    """Engine derivation with optional closed-form cross-check"""
    coefficients: CoefficientReport
    linearized: bool = False
    equations: Optional[List[Dict[str, Any]]] = Field(default=None, description="Exported determining equations")
    verification: Optional[VerificationSummary] = None
    closed_form_deviation: Dict[str, float] = Field(
        default_factory=dict, description="Engine vs closed form at this carrier, when a closed form exists",
    )


class ManifestEntry(BaseModel):
    path: str
    md5: str
    bytes: int


class Manifest(BaseModel):
    """Everything needed to re-run an invocation and check its outputs"""
    schema_version: str
    app_name: str
    app_version: str
    run_id: Optional[str] = None
    command: str
    config: Dict[str, Any]
    seed: int
    numerics: Dict[str, Any]
    files: List[ManifestEntry] = Field(default_factory=list)


__all__ = [
    "ComplexValue",
    "CoefficientReport",
    "VerificationSummary",
    "DerivationReport",
    "ConvergenceReport",
    "ManifestEntry",
    "Manifest",
]
