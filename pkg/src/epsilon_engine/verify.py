"""
Closed-Form Verification
Compares the engine against the closed-form reductions on sampled points
"""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from core.exception import DeviationException, DomainException, LatticeException
from core.numerics_config import get_numerics_config
from models import HietarintaModel, LatticeModel, MKdVModel, VKVMModel
from reduction.closed_forms import reduce_hietarinta, reduce_mkdv, reduce_vkvm
from reduction.reduced import ReducedEquation
from reduction.scales import pq_of, scales_from_S
from reduction.wavenumber import Wavenumber
from utils.numbers import relative_deviation

from .hierarchy import derive

logger = logging.getLogger(__name__)

COMPARED = ("c1", "c2", "cubic", "cubic_local", "harmonic2_coupling", "nonlocal_coupling", "p1", "p2")

# printed form -> coefficient it stands for
PRINTED_TARGETS: Dict[str, Dict[str, str]] = {
    "mkdv": {"c1_trig": "c1", "c2_trig": "c2", "c3_trig": "cubic", "continuum_trig": "continuum"},
    "hietarinta": {
        "c1_trig": "c1",
        "c2_trig": "c2",
        "c4_trig": "nonlocal_coupling",
        "c3_split": "cubic_local",
        "c5_split": "harmonic2_coupling",
        "merged_split": "cubic",
    },
    "vkvm": {
        "c1_trig": "c1",
        "c2_trig": "c2",
        "c3_trig": "nonlocal_coupling",
        "p1_printed": "p1",
        "p2_printed": "p2",
        "c4hat_printed": "cubic",
    },
}


class SamplePoint(BaseModel):
    params: Dict[str, str]
    cos_k: str
    sin_sign: int
    M1: str
    M2: str
    deviations: Dict[str, float] = Field(default_factory=dict)
    printed_deviations: Dict[str, float] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    """Engine against closed forms over a sample"""

    model: str
    seed: int
    tolerance: float
    points: List[SamplePoint] = Field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((max(p.deviations.values(), default=0.0) for p in self.points), default=0.0)

    def worst_by_coefficient(self) -> Dict[str, float]:
        worst: Dict[str, float] = {}
        for point in self.points:
            for name, value in point.deviations.items():
                worst[name] = max(worst.get(name, 0.0), value)
        return worst

    def worst_printed(self) -> Dict[str, float]:
        worst: Dict[str, float] = {}
        for point in self.points:
            for name, value in point.printed_deviations.items():
                worst[name] = max(worst.get(name, 0.0), value)
        return worst


def _rational(rng: np.random.Generator, bound: int = 3, denominator: int = 4) -> Fraction:
    """Nonzero rational in [-bound, bound] with a small denominator"""
    while True:
        d = int(rng.integers(1, denominator + 1))
        value = Fraction(int(rng.integers(-bound * d, bound * d + 1)), d)
        if value != 0:
            return value


def _cos_k(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(-9, 10)), 10)


def _sample_model(kind: str, rng: np.random.Generator) -> LatticeModel:
    if kind == "mkdv":
        p, q = _rational(rng), _rational(rng)
        if p in (q, -q):
            raise DomainException("p = +-q")
        return MKdVModel(p=p, q=q)
    if kind == "hietarinta":
        return HietarintaModel(e1=_rational(rng), e2=_rational(rng), o1=_rational(rng))
    if kind == "vkvm":
        alpha = _rational(rng, bound=2)
        if alpha in (Fraction(1, 2), 1):
            raise DomainException("alpha = 1/2 or 1")
        return VKVMModel(alpha=alpha)
    raise DomainException(f"No closed forms for {kind}")


def closed_form(model: LatticeModel, wavenumber: Wavenumber) -> ReducedEquation:
    """Closed-form reduction at the smallest M2 with integer M1"""
    params = model.params
    if isinstance(model, VKVMModel) and pq_of(model).is_degenerate:
        z = complex(wavenumber.mp_z())
        pq = pq_of(model)
        # M1 = 1 and M2 = 0
        scales = scales_from_S(model, wavenumber, 1 / (float(pq.P) - float(pq.Q) * z))
        return reduce_vkvm(params["alpha"], wavenumber, scales=scales)
    M2 = pq_of(model).m1_ratio(wavenumber.cos_k).denominator
    if isinstance(model, MKdVModel):
        return reduce_mkdv(params["p"], params["q"], wavenumber, M2)
    if isinstance(model, HietarintaModel):
        return reduce_hietarinta(params["e1"], params["e2"], params["o1"], wavenumber, M2)
    if isinstance(model, VKVMModel):
        return reduce_vkvm(params["alpha"], wavenumber, M2)
    raise DomainException(f"No closed forms for {model.kind}")


def compare(kind: str, engine: ReducedEquation, closed: ReducedEquation) -> SamplePoint:
    """Relative deviations of engine values from closed and printed forms"""
    deviations: Dict[str, float] = {}
    for name in COMPARED:
        reference, value = getattr(closed, name), getattr(engine, name)
        if reference is None or value is None:
            continue
        deviations[name] = relative_deviation(value, reference)
    printed: Dict[str, float] = {}
    for name, target in PRINTED_TARGETS.get(kind, {}).items():
        if name in closed.printed and getattr(engine, target) is not None:
            printed[name] = relative_deviation(closed.printed[name], getattr(engine, target))
    return SamplePoint(
        params=closed.params,
        cos_k=closed.wavenumber.label,
        sin_sign=closed.wavenumber.sin_sign,
        M1=str(closed.scales.M1),
        M2=str(closed.scales.M2),
        deviations=deviations,
        printed_deviations=printed,
    )


def verify_closed_forms(model: Union[str, LatticeModel], sample_count: int = 5, seed: Optional[int] = None,
                        cos_values: Optional[List[Any]] = None) -> VerificationReport:
    """
    Evaluate engine and closed forms at sampled points and compare.

    Args:
        model: Model kind, sampled with random rational parameters, or a
            fixed model instance
        sample_count: Number of successful points
        seed: Random seed, numerics default when omitted
        cos_values: Fixed cos k values instead of random ones

    Returns:
        VerificationReport; printed-form mismatches are reported, not raised

    Raises:
        DeviationException: an engine value deviates beyond verify_tol
        DomainException: the model has no closed forms
    """
    config = get_numerics_config()
    seed = config.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    kind = model if isinstance(model, str) else model.kind
    if kind not in PRINTED_TARGETS:
        raise DomainException(f"No closed forms for {kind}")

    report = VerificationReport(model=kind, seed=seed, tolerance=config.verify_tol)
    cos_queue = list(cos_values or [])
    attempts = 0
    while len(report.points) < sample_count:
        attempts += 1
        if attempts > 50 * max(sample_count, 1):
            raise DomainException(f"Could not sample {sample_count} valid {kind} points", found=len(report.points))
        try:
            instance = _sample_model(kind, rng) if isinstance(model, str) else model
            cos_k = Fraction(cos_queue.pop(0)) if cos_queue else _cos_k(rng)
            wavenumber = Wavenumber(cos_k=cos_k, sin_sign=1 if rng.random() < 0.5 else -1)
            closed = closed_form(instance, wavenumber)
            engine = derive(instance, wavenumber, closed.scales)
        except LatticeException as exc:
            logger.debug(f"Resampling {kind}: {exc}")
            continue
        point = compare(kind, engine, closed)
        report.points.append(point)
        for name, deviation in point.deviations.items():
            if deviation > config.verify_tol:
                raise DeviationException(
                    f"{kind}: engine {name} deviates from the closed form",
                    coefficient=name, deviation=deviation, cos_k=point.cos_k, **point.params,
                )

    logger.info(
        f"Verified {kind} at {len(report.points)} points: max deviation {report.max_deviation:.3g}, "
        f"printed forms {report.worst_printed()}"
    )
    return report
