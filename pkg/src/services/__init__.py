"""
Services
Orchestrate library calls per command family and hand results to the repository.
"""
from .admissible import AdmissibleService
from .base import BaseService, run_service
from .coefficients import CoefficientService
from .derivation import DerivationService
from .dispersion import DispersionService
from .simulation import SimulationService, ValidationService

__all__ = [
    "BaseService",
    "run_service",
    "AdmissibleService",
    "CoefficientService",
    "DerivationService",
    "DispersionService",
    "SimulationService",
    "ValidationService",
]
