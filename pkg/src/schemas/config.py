"""
Run Configuration
Archivable configuration of one CLI invocation, loaded from TOML or JSON.
"""
import json
import logging
import tomllib
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from core.exception import ConfigException
from core.numerics_config import NumericsConfig
from utils.str import parse_rational

logger = logging.getLogger(__name__)

ModelKind = Literal["mkdv", "hietarinta", "vkvm", "nikdv"]


class ModelSpec(BaseModel):
    """Model kind and exact parameters as strings ("2", "1/3")"""
    kind: ModelKind = Field(..., description="Lattice model")
    params: Dict[str, str] = Field(default_factory=dict, description="Exact model parameters")

    model_config = ConfigDict(extra="forbid")

    @field_validator("params", mode="before")
    @classmethod
    def _stringify(cls, value: Any) -> Dict[str, str]:
        if not isinstance(value, dict):
            raise ValueError("params must be a table")
        return {str(k): str(v) for k, v in value.items()}


class CarrierSpec(BaseModel):
    """Rational cos k, sign of sin k and the integer scale M2"""
    cos_k: str = Field(default="0", description="Rational cos k")
    sin_sign: int = Field(default=1, description="Sign of sin k")
    M2: Optional[str] = Field(default=None, description="Scale on m1; model default when omitted")
    branch: Optional[int] = Field(default=None, ge=0, le=1, description="Branch of S")
    derivation_only: bool = Field(default=False, description="Accept non-integer M1 (coefficients only)")

    model_config = ConfigDict(extra="forbid")

    @field_validator("cos_k", "M2", mode="before")
    @classmethod
    def _rational(cls, value: Any) -> Optional[str]:
        if value is None:
            return None
        try:
            parse_rational(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
        return str(value)

    @field_validator("sin_sign")
    @classmethod
    def _sign(cls, value: int) -> int:
        if value not in (-1, 1):
            raise ValueError("sin_sign must be +1 or -1")
        return value


class SweepSpec(BaseModel):
    """Uniform k-grid for dispersion tables"""
    k_min: float = Field(default=0.05)
    k_max: float = Field(default=3.09)
    points: int = Field(default=61, ge=0)

    model_config = ConfigDict(extra="forbid")

    def grid(self) -> List[float]:
        if self.points == 0:
            return []
        if self.points == 1:
            return [self.k_min]
        step = (self.k_max - self.k_min) / (self.points - 1)
        return [self.k_min + i * step for i in range(self.points)]


class AdmissibleSpec(BaseModel):
    """Bounds for admissible-carrier enumeration and the region grid"""
    M2_max: int = Field(default=4, ge=0)
    cosk_denominator_max: int = Field(default=4, ge=0)
    r_min: str = Field(default="-4")
    r_max: str = Field(default="4")
    r_denominator: int = Field(default=4, ge=1, description="r grid spacing is 1/r_denominator")
    coefficient_sweep: bool = Field(default=False, description="Tabulate coefficients over every admissible carrier")

    model_config = ConfigDict(extra="forbid")

    def r_grid(self) -> List[str]:
        lo, hi = parse_rational(self.r_min), parse_rational(self.r_max)
        d = self.r_denominator
        start, stop = int(lo * d), int(hi * d)
        return [f"{i}/{d}" for i in range(start, stop + 1)]


class DeriveSpec(BaseModel):
    """Expansion engine options"""
    reduced_variable: Literal["difference", "sum"] = Field(default="difference")
    linearized: bool = Field(default=False)
    export_equations: bool = Field(default=False, description="Also emit the determining equations")
    digits: int = Field(default=20, ge=6, description="Significant digits in exported coefficients")
    verify: bool = Field(default=False, description="Compare engine and closed forms at sampled points")
    samples: int = Field(default=5, ge=1)

    model_config = ConfigDict(extra="forbid")


class SimulationSpec(BaseModel):
    """Packet and convergence-run options"""
    profile: Literal["sech", "gaussian"] = Field(default="sech")
    amplitude: float = Field(default=0.5, ge=0)
    width: float = Field(default=8.0, gt=0)
    center: float = Field(default=0.0)
    harmonics_included: int = Field(default=2, ge=1, le=2)
    slow_time: int = Field(default=5, ge=0)
    eps_list: List[str] = Field(default_factory=lambda: ["1/8", "1/16"])
    method: Literal["average", "spectral"] = Field(default="average")
    reference: Literal["semicontinuous", "map"] = Field(
        default="semicontinuous", description="Reduced evolution compared against: RK4 in slow time or the explicit map"
    )
    dt: float = Field(default=0.005, gt=0, le=0.5, description="RK4 step of the semi-continuous reference")
    snapshots: List[int] = Field(default_factory=list, description="Slow times written as envelope snapshots")
    dump_grid: bool = Field(default=False, description="Write the full-lattice window as a binary dump")
    strict_slow_lattice: bool = Field(default=False, description="Require M1 and M2 to divide N")

    model_config = ConfigDict(extra="forbid")

    @field_validator("eps_list", mode="before")
    @classmethod
    def _reciprocals(cls, value: Any) -> List[str]:
        values = [str(v) for v in value]
        for v in values:
            eps = parse_rational(v)
            if eps <= 0 or eps.numerator != 1:
                raise ValueError(f"epsilon must be 1/N, got {v}")
        return values

    def epsilons(self) -> List[float]:
        return [float(parse_rational(v)) for v in self.eps_list]


class OutputSpec(BaseModel):
    directory: Optional[str] = Field(default=None, description="Output directory; settings default when omitted")
    prefix: str = Field(default="", description="Prefix of every emitted file name")

    model_config = ConfigDict(extra="forbid")


class RunConfig(BaseModel):
    """Full configuration of one invocation"""
    command: Optional[str] = Field(default=None, description="Subcommand the config was written for")
    model: ModelSpec
    carrier: CarrierSpec = Field(default_factory=CarrierSpec)
    sweep: SweepSpec = Field(default_factory=SweepSpec)
    admissible: AdmissibleSpec = Field(default_factory=AdmissibleSpec)
    derive: DeriveSpec = Field(default_factory=DeriveSpec)
    simulation: SimulationSpec = Field(default_factory=SimulationSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)
    seed: Optional[int] = Field(default=None, description="Sampling seed; numerics default when omitted")
    tolerances: Dict[str, float] = Field(default_factory=dict, description="Overrides of numerics tolerances")

    model_config = ConfigDict(extra="forbid")

    @field_validator("tolerances")
    @classmethod
    def _known_tolerances(cls, value: Dict[str, float]) -> Dict[str, float]:
        unknown = sorted(set(value) - set(NumericsConfig.model_fields))
        if unknown:
            raise ValueError(f"unknown tolerance keys: {unknown}")
        return value

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "RunConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise ConfigException("Invalid run configuration", errors=exc.error_count(), detail=str(exc)) from exc

    @classmethod
    def load(cls, path: Path, overrides: Optional[List[str]] = None) -> "RunConfig":
        """
        Read a TOML or JSON config and apply `key.sub=value` overrides.

        Raises:
            ConfigException: unreadable file, unknown format or invalid keys
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigException("Cannot read config", path=str(path), error=str(exc)) from exc

        suffix = path.suffix.lower()
        try:
            if suffix == ".toml":
                data = tomllib.loads(text)
            elif suffix == ".json":
                data = json.loads(text)
            else:
                raise ConfigException("Config must be .toml or .json", path=str(path))
        except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
            raise ConfigException("Malformed config", path=str(path), error=str(exc)) from exc

        data = apply_overrides(data, overrides or [])
        logger.debug(f"Loaded run config from {path}")
        return cls.from_mapping(data)


def _override_value(raw: str) -> Any:
    """JSON literal when it parses, else the raw string (rationals stay strings)"""
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(data: Dict[str, Any], overrides: List[str]) -> Dict[str, Any]:
    """Return a copy of data with each `a.b.c=value` override set"""
    result = json.loads(json.dumps(data))
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigException("Override must look like key.sub=value", override=item)
        node = result
        *parents, leaf = key.strip().split(".")
        for part in parents:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigException("Override path crosses a value", override=item)
            node = child
        node[leaf] = _override_value(raw.strip())
    return result


__all__ = [
    "ModelSpec",
    "CarrierSpec",
    "SweepSpec",
    "AdmissibleSpec",
    "DeriveSpec",
    "SimulationSpec",
    "OutputSpec",
    "RunConfig",
    "apply_overrides",
]
