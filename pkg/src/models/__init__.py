"""
Lattice models.
This package contains the four lattice equations and their shared machinery.
"""
from typing import Any, Dict, Type

from core.exception import ConfigException

from .base import (
    CarrierWave,
    LatticeModel,
    LatticePolynomial,
    QuadModel,
    dispersion_sweep,
    finite_difference_group_velocity,
    plane_wave_residual,
    step_quad,
)
from .grid import FieldGrid, constant_grid
from .hietarinta import HietarintaModel, hietarinta_o2, reality_residual
from .mkdv import MKdVModel
from .nikdv import NiKdVModel, step_nikdv
from .vkvm import VKVMModel

MODEL_REGISTRY: Dict[str, Type[LatticeModel]] = {
    "mkdv": MKdVModel,
    "hietarinta": HietarintaModel,
    "vkvm": VKVMModel,
    "nikdv": NiKdVModel,
}


def build_model(kind: str, **params: Any) -> LatticeModel:
    """Instantiate a model by kind"""
    try:
        model_class = MODEL_REGISTRY[kind]
    except KeyError:
        raise ConfigException(f"Unknown model kind: {kind}", known=sorted(MODEL_REGISTRY))
    return model_class(**params)


__all__ = [
    "CarrierWave",
    "LatticeModel",
    "LatticePolynomial",
    "QuadModel",
    "FieldGrid",
    "constant_grid",
    "MKdVModel",
    "HietarintaModel",
    "VKVMModel",
    "NiKdVModel",
    "MODEL_REGISTRY",
    "build_model",
    "hietarinta_o2",
    "reality_residual",
    "step_quad",
    "step_nikdv",
    "dispersion_sweep",
    "finite_difference_group_velocity",
    "plane_wave_residual",
]
