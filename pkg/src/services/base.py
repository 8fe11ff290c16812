"""
Base Service Class
Provides the shared run lifecycle for services that write through a repository.
"""
import logging
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, Generic, Optional, Type, TypeVar

from core.exception import ConfigException, LatticeException
from core.numerics_config import numerics_overrides
from log.context import LogContext
from models import LatticeModel, NiKdVModel, VKVMModel, build_model
from reduction import (
    REDUCERS,
    ReducedEquation,
    ScaleTriple,
    Wavenumber,
    as_wavenumber,
    pq_of,
    scales_from_S,
    solve_scales,
)
from repositories.base import BaseRepository
from schemas.config import RunConfig
from schemas.report import Manifest
from settings import settings
from utils.str import parse_rational

logger = logging.getLogger(__name__)

# Type variable for repositories
RepositoryType = TypeVar("RepositoryType", bound=BaseRepository)

# Positional parameters of each closed-form reducer; hietarinta derives o2 itself
_REDUCER_PARAMS = {
    "mkdv": ("p", "q"),
    "hietarinta": ("e1", "e2", "o1"),
    "vkvm": ("alpha",),
}


class BaseService(ABC, Generic[RepositoryType]):
    """
    Base service class with automatic repository injection.
    Subclasses implement `run`; `execute` wraps it with the numerics
    overrides of the config and writes the manifest afterwards.

    Example:
        class DispersionService(BaseService[ArtifactRepository]):
            repository_class = ArtifactRepository
            command = "dispersion"

            def run(self):
                rows = dispersion_sweep(self.build_model(), self.config.sweep.grid())
                self.repository.write_csv("dispersion.csv", rows)
                return {"rows": len(rows)}

        # Usage
        summary = DispersionService(config).execute()
    """

    # Repository class to inject (must be set in subclass)
    repository_class: Optional[Type[RepositoryType]] = None
    command: ClassVar[str] = ""
    needs_carrier: ClassVar[bool] = True

    def __init__(self, config: RunConfig, repository: Optional[RepositoryType] = None):
        """
        Initialize service with optional repository injection.

        Args:
            config: Validated run configuration
            repository: Optional pre-configured repository instance
        """
        self.config = config
        if repository is not None:
            self.repository = repository
            logger.debug(f"{self.__class__.__name__}: Using provided repository")
        elif self.repository_class is not None:
            self.repository = self.repository_class(config.output.directory, prefix=config.output.prefix)
            logger.debug(f"{self.__class__.__name__}: Created repository in {self.repository.directory}")
        else:
            raise ValueError(
                f"{self.__class__.__name__} must either provide a repository instance "
                f"or set repository_class attribute"
            )

    # ==================== Lifecycle ====================

    @abstractmethod
    def run(self) -> Dict[str, Any]:
        """Do the work and write outputs; returns a summary for stdout"""

    def overrides(self) -> Dict[str, Any]:
        values: Dict[str, Any] = dict(self.config.tolerances)
        if self.config.seed is not None:
            values["seed"] = self.config.seed
        return values

    def execute(self) -> Dict[str, Any]:
        """
        Run under the config's numerics overrides and write the manifest.

        Returns:
            Summary dict including the written files

        Raises:
            LatticeException: Any failure of the run; the manifest is not written
        """
        with numerics_overrides(**self.overrides()) as numerics:
            self.validate()
            logger.info(f"{self.__class__.__name__}: running {self.command} for {self.config.model.kind}")
            summary = self.run()
            self.write_manifest(numerics.seed, numerics.model_dump())
        summary["files"] = self.repository.written_names()
        return summary

    def validate(self) -> None:
        """Model constraints and the reality condition at the configured carrier"""
        model = self.build_model()
        if self.needs_carrier:
            wavenumber = self.wavenumber()
            wavenumber.check_carrier()
            model.check_reality(wavenumber.k)

    def write_manifest(self, seed: int, numerics: Dict[str, Any]) -> None:
        config = self.config.model_copy(update={"command": self.command, "seed": seed})
        manifest = Manifest(
            schema_version=settings.schema_version,
            app_name=settings.app_name,
            app_version=settings.app_version,
            run_id=LogContext.get_run_id(),
            command=self.command,
            config=config.model_dump(mode="json"),
            seed=seed,
            numerics=numerics,
        )
        self.repository.write_manifest(manifest)

    # ==================== Shared construction ====================

    def build_model(self) -> LatticeModel:
        spec = self.config.model
        try:
            params = {name: parse_rational(value) for name, value in spec.params.items()}
        except ValueError as e:
            raise ConfigException("Model parameters must be rational", error=str(e))
        try:
            return build_model(spec.kind, **params)
        except TypeError as e:
            raise ConfigException(f"Bad parameters for {spec.kind}", error=str(e))

    def wavenumber(self) -> Wavenumber:
        carrier = self.config.carrier
        return as_wavenumber(carrier.cos_k, carrier.sin_sign)

    def default_M2(self, model: LatticeModel, wavenumber: Wavenumber) -> Any:
        """Configured M2, else the smallest M2 giving an integer M1"""
        if self.config.carrier.M2 is not None:
            return parse_rational(self.config.carrier.M2)
        if isinstance(model, NiKdVModel):
            return 1
        return pq_of(model).m1_ratio(wavenumber.cos_k).denominator

    def scales(self, model: LatticeModel, wavenumber: Wavenumber) -> ScaleTriple:
        """
        Scale triple of the configured carrier.

        VKVM at P^2 = Q^2 has no PQ scales; S = 1/(P - Q z) gives M1 = 1, M2 = 0.
        """
        if isinstance(model, VKVMModel) and pq_of(model).is_degenerate:
            pq = pq_of(model)
            z = complex(wavenumber.mp_z())
            return scales_from_S(model, wavenumber, 1 / (float(pq.P) - float(pq.Q) * z))
        carrier = self.config.carrier
        return solve_scales(
            model, wavenumber, self.default_M2(model, wavenumber),
            branch=carrier.branch, derivation_only=carrier.derivation_only,
        )

    def reduce(self, model: LatticeModel, wavenumber: Wavenumber) -> ReducedEquation:
        """Closed-form reduced equation; nikdv goes through the engine"""
        carrier = self.config.carrier
        model.check_reality(wavenumber.k)
        if isinstance(model, NiKdVModel):
            return REDUCERS["nikdv"](
                model.params["alpha"], model.params["beta"], wavenumber,
                self.default_M2(model, wavenumber), branch=carrier.branch,
                derivation_only=carrier.derivation_only,
            )
        if isinstance(model, VKVMModel) and pq_of(model).is_degenerate:
            return REDUCERS["vkvm"](model.params["alpha"], wavenumber, scales=self.scales(model, wavenumber))
        args = [model.params[name] for name in _REDUCER_PARAMS[model.kind]]
        return REDUCERS[model.kind](*args, wavenumber, self.default_M2(model, wavenumber), branch=carrier.branch)


def run_service(service: BaseService) -> Dict[str, Any]:
    """Execute a service, attaching the command name to any failure"""
    try:
        return service.execute()
    except LatticeException as e:
        e.context.setdefault("command", service.command)
        raise


__all__ = ["BaseService", "RepositoryType", "run_service"]
