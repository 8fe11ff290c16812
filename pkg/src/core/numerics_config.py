"""
Numerics Configuration
Centralized tolerances and run limits with environment variable support
"""
from contextlib import contextmanager
from typing import Any, Iterator

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class NumericsConfig(BaseSettings):
    """
    Global numerics configuration.
    All settings can be overridden via environment variables.
    """

    # Lattice stepping
    delta_sing: float = Field(default=1e-12, description="Relative threshold for singular quad solves")
    residual_tol: float = Field(default=1e-12, description="Residual tolerance for filled lattice cells")
    unit_modulus_tol: float = Field(default=1e-13, description="Tolerance for |Omega| = 1")

    # Reduction and engine
    scale_tol: float = Field(default=1e-12, description="Imaginary-part tolerance for M1, M2")
    engine_tol: float = Field(default=1e-10, description="Annihilation tolerance for determining equations")
    verify_tol: float = Field(default=1e-8, description="Hard limit for engine vs closed-form deviation")
    mp_dps: int = Field(default=30, ge=15, description="mpmath working precision in decimal digits")

    # Simulation
    blowup_factor: float = Field(default=1e3, description="Blow-up factor relative to the initial envelope")
    perturbative_warning: float = Field(default=0.2, description="Warn when epsilon * amplitude exceeds this")
    edge_decay: float = Field(default=1e-8, description="Required profile decay at the window edges")
    boundary_mass: float = Field(default=1e-6, description="Deviation allowed near the window edges")
    boundary_cells: int = Field(default=10, ge=1, description="Width of the edge band checked during runs")
    halving_tol: float = Field(default=1e-6, description="Step-halving agreement for the semi-continuous integrator")

    # Sampling
    seed: int = Field(default=20240229, description="Seed for randomized sampling")

    model_config = SettingsConfigDict(
        env_prefix="NUMERICS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global numerics configuration instance
numerics_config = NumericsConfig()


def get_numerics_config() -> NumericsConfig:
    """Get the global numerics configuration instance"""
    return numerics_config


@contextmanager
def numerics_overrides(**values: Any) -> Iterator[NumericsConfig]:
    """
    Temporarily replace fields of the global numerics configuration.

    Values are validated by the model; the previous values are restored
    on exit, also when the body raises.
    """
    checked = NumericsConfig.model_validate({**numerics_config.model_dump(), **values})
    previous = {name: getattr(numerics_config, name) for name in values}
    for name in values:
        setattr(numerics_config, name, getattr(checked, name))
    try:
        yield numerics_config
    finally:
        for name, value in previous.items():
            setattr(numerics_config, name, value)
