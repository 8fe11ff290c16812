"""
Pydantic schemas for run configuration and reports.
This package contains all CLI input/output models.
"""

from .config import (
    AdmissibleSpec,
    CarrierSpec,
    DeriveSpec,
    ModelSpec,
    OutputSpec,
    RunConfig,
    SimulationSpec,
    SweepSpec,
    apply_overrides,
)
from .report import (
    CoefficientReport,
    ComplexValue,
    ConvergenceReport,
    DerivationReport,
    Manifest,
    ManifestEntry,
    VerificationSummary,
)

__all__ = [
    "AdmissibleSpec",
    "CarrierSpec",
    "DeriveSpec",
    "ModelSpec",
    "OutputSpec",
    "RunConfig",
    "SimulationSpec",
    "SweepSpec",
    "apply_overrides",
    "CoefficientReport",
    "ComplexValue",
    "ConvergenceReport",
    "DerivationReport",
    "Manifest",
    "ManifestEntry",
    "VerificationSummary",
]
