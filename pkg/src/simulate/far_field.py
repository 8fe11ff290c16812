"""
Far-Field Validation
Convergence of demodulated lattice envelopes towards the reduced evolution
"""
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from core.exception import LatticeException
from models import LatticeModel
from reduction.reduced import ReducedEquation
from simulate.demodulate import Method, demodulate, second_harmonic_ratio
from simulate.envelope import EnvelopeHistory, run_reduced, run_semicontinuous
from simulate.full import run_full
from simulate.packet import PacketSpec, make_initial

logger = logging.getLogger(__name__)

Reference = Literal["semicontinuous", "map"]


def reduced_reference(reduced: ReducedEquation, phi0: Any, slow_time: int, n2: Any,
                      reference: Reference = "semicontinuous", dt: float = 0.005) -> EnvelopeHistory:
    """
    Reduced evolution the demodulated lattice envelope is compared with.

    "semicontinuous" integrates i dphi/dt with RK4 up to t = slow_time;
    "map" iterates the explicit map, which amplifies kappa != 0 modes at
    most carriers. Rows sit at integer slow times either way.
    """
    if reference == "map":
        return run_reduced(reduced, phi0, slow_time, n2=n2)
    return run_semicontinuous(reduced, phi0, float(slow_time), dt, n2=n2)


class ConvergenceRow(BaseModel):
    epsilon: float
    N: int
    error: float = Field(..., description="max |phi_lattice - phi_reduced| / max |phi_lattice| at the final slow time")
    ratio: Optional[float] = Field(default=None, description="error at the previous epsilon over this error")
    demodulation_floor: float = Field(..., description="Initial envelope error against the exact profile")
    second_harmonic: Optional[float] = Field(default=None, description="Fitted |p1| on the initial row")
    min_denominator: Optional[float] = None
    cols: int
    rows: int


class ConvergenceReport(BaseModel):
    """Errors over a sequence of epsilon"""

    model: str
    params: Dict[str, str]
    cos_k: str
    M1: str
    M2: str
    slow_time: int
    method: str
    reference: str = Field(default="semicontinuous", description="Reduced evolution the lattice envelope is compared with")
    dt: Optional[float] = Field(default=None, description="RK4 step of the semi-continuous reference")
    p1: complex
    rows: List[ConvergenceRow] = Field(default_factory=list)

    @property
    def errors(self) -> List[float]:
        return [row.error for row in self.rows]

    @property
    def is_monotone(self) -> bool:
        return all(a > b for a, b in zip(self.errors, self.errors[1:]))

    def table(self) -> List[Dict[str, Any]]:
        return [row.model_dump() for row in self.rows]


def far_field_error(model: LatticeModel, reduced: ReducedEquation, packet: PacketSpec,
                    method: Method = "average", reference: Reference = "semicontinuous",
                    dt: float = 0.005) -> ConvergenceRow:
    """One epsilon: lattice run, demodulation and reduced evolution compared at packet.slow_time"""
    init = make_initial(model, packet, reduced)
    grid = run_full(model, init, packet.m_steps)
    reach = math.ceil(packet.extent)
    n2 = np.arange(math.floor(packet.center) - reach, math.ceil(packet.center) + reach + 1)
    history = demodulate(grid, reduced, packet.epsilon, n2, method=method)

    reduced_history = reduced_reference(reduced, history.initial, packet.slow_time, n2, reference, dt)
    lattice, predicted = history.final, reduced_history.final
    scale = float(np.max(np.abs(lattice))) or 1.0
    error = float(np.max(np.abs(lattice - predicted))) / scale
    exact = packet.envelope(n2)
    floor = float(np.max(np.abs(history.initial - exact))) / max(packet.amplitude, 1e-300)

    harmonic = None
    if packet.harmonics_included >= 2 and packet.amplitude > 0:
        harmonic = second_harmonic_ratio(grid, reduced, packet.epsilon, 0)
    logger.info(f"N={packet.N}: far-field error {error:.4g}, demodulation floor {floor:.3g}")
    return ConvergenceRow(
        epsilon=packet.epsilon,
        N=packet.N,
        error=error,
        demodulation_floor=floor,
        second_harmonic=harmonic,
        min_denominator=grid.min_denominator,
        cols=grid.shape[1],
        rows=grid.rows,
    )


def validate_far_field(model: LatticeModel, reduced: ReducedEquation, eps_list: Sequence[Any], slow_time: int,
                       amplitude: float = 0.5, width: float = 8.0, profile: str = "sech",
                       method: Method = "average", reference: Reference = "semicontinuous",
                       dt: float = 0.005) -> ConvergenceReport:
    """
    Far-field convergence over eps_list.

    Args:
        model: Lattice model
        reduced: Reduced equation at the carrier and scales of the runs
        eps_list: Values 1/N, largest first
        slow_time: Slow steps m2 compared
        amplitude, width, profile: Packet envelope
        reference: "semicontinuous" (RK4 with step dt) or "map"

    Returns:
        ConvergenceReport with E(eps) and successive ratios

    Raises:
        LatticeException: any sub-run failure, with epsilon attached
    """
    report = ConvergenceReport(
        model=model.kind,
        params=model.describe_params(),
        cos_k=reduced.wavenumber.label,
        M1=str(reduced.scales.M1),
        M2=str(reduced.scales.M2),
        slow_time=slow_time,
        method=method,
        reference=reference,
        dt=dt if reference == "semicontinuous" else None,
        p1=reduced.p1,
    )
    previous: Optional[float] = None
    for value in eps_list:
        epsilon = float(Fraction(value)) if isinstance(value, str) else float(value)
        packet = PacketSpec(
            profile=profile, amplitude=amplitude, width=width, epsilon=epsilon, slow_time=slow_time,
        )
        try:
            row = far_field_error(model, reduced, packet, method, reference, dt)
        except LatticeException as exc:
            exc.context.setdefault("epsilon", epsilon)
            raise
        if previous is not None and row.error > 0:
            row = row.model_copy(update={"ratio": previous / row.error})
        previous = row.error
        report.rows.append(row)
    if not report.is_monotone:
        logger.warning(f"Far-field errors are not decreasing: {report.errors}")
    return report
