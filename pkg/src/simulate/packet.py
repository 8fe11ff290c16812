"""
Packet Initial Data
Modulated-wave packets built from the truncated envelope ansatz
"""
import logging
import math
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.exception import LatticeException, PacketSizingException
from core.numerics_config import get_numerics_config
from models import LatticeModel, NiKdVModel, QuadModel
from reduction.reduced import ReducedEquation
from reduction.scales import allowed_region, pq_of
from simulate.mean_field import mean_field

logger = logging.getLogger(__name__)


class PacketSpec(BaseModel):
    """Envelope profile in slow units and the fine-lattice resolution"""

    profile: Literal["sech", "gaussian"] = Field(default="sech")
    amplitude: float = Field(default=0.5, ge=0)
    width: float = Field(default=8.0, gt=0, description="Width in slow lattice units")
    center: float = Field(default=0.0, description="Centre on the n2 axis")
    epsilon: float = Field(..., gt=0, lt=1, description="1/N")
    harmonics_included: int = Field(default=2, ge=1, le=2)
    slow_time: int = Field(default=0, ge=0, description="Slow steps m2 the window must accommodate")
    cols: Optional[int] = Field(default=None, description="Window width; sized automatically when omitted")

    model_config = ConfigDict(frozen=True)

    @field_validator("epsilon")
    @classmethod
    def _reciprocal_integer(cls, value: float) -> float:
        n = round(1 / value)
        if abs(n * value - 1) > 1e-12:
            raise PacketSizingException("epsilon must be 1/N for an integer N", epsilon=value)
        return 1 / n

    @property
    def N(self) -> int:
        return round(1 / self.epsilon)

    @property
    def m_steps(self) -> int:
        return self.slow_time * self.N * self.N

    def envelope(self, n2: Any) -> np.ndarray:
        x = (np.asarray(n2, dtype=float) - self.center) / self.width
        if self.profile == "sech":
            return self.amplitude / np.cosh(x) + 0j
        return self.amplitude * np.exp(-x * x) + 0j

    @property
    def extent(self) -> float:
        """Half-width in slow units beyond which the profile is below edge_decay"""
        decay = get_numerics_config().edge_decay
        if self.profile == "sech":
            return self.width * math.acosh(1 / decay)
        return self.width * math.sqrt(math.log(1 / decay))


class InitialData(BaseModel):
    """Seed rows and window placement for a full-lattice run"""

    rows: Any = Field(..., description="Seed rows, shape (1, cols) or (2, cols) for nikdv")
    n0: int = Field(..., description="Lattice n of the first column")
    direction: Literal["up_left", "up_right", "periodic"]
    packet: PacketSpec
    background: float

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def cols(self) -> int:
        return self.rows.shape[1]


def radiation_speed(model: LatticeModel, samples: int = 256) -> float:
    """Largest |group velocity| over the dispersion branch"""
    if isinstance(model, QuadModel) and not isinstance(model, NiKdVModel):
        try:
            pq = pq_of(model)
            if pq.ratio not in (None, 0, 1, -1):
                return float(max(abs(end) for end in allowed_region(pq.ratio)))
        except LatticeException:
            pass
    speeds = []
    for k in np.linspace(0.01, math.pi - 0.01, samples):
        try:
            speeds.append(abs(model.group_velocity(float(k))))
        except LatticeException:
            continue
    return max(speeds, default=0.0)


def ansatz_field(reduced: ReducedEquation, packet: PacketSpec, n: Any, m: Any) -> np.ndarray:
    """b + eps (phi E + c.c.) + eps^2 (p1 phi^2 E^2 + c.c. + psi0) at fine sites"""
    eps = packet.epsilon
    n = np.asarray(n, dtype=float)
    m = np.asarray(m, dtype=float)
    n2, _ = reduced.scales.slow_coordinates(n, m, eps, reduced.reduced_variable)
    phi = packet.envelope(n2)
    carrier = reduced.carrier.phase(n, m)
    u = 2 * eps * np.real(phi * carrier)
    if packet.harmonics_included >= 2:
        u = u + 2 * eps * eps * np.real(reduced.p1 * phi * phi * carrier * carrier)
        if reduced.has_nonlocal:
            slow = np.arange(math.floor(np.min(n2)) - 1, math.ceil(np.max(n2)) + 2)
            psi0 = mean_field(packet.envelope(slow), reduced.p2)
            u = u + eps * eps * np.interp(n2, slow, np.real(psi0))
    return u


def make_initial(model: LatticeModel, packet: PacketSpec, reduced: ReducedEquation) -> InitialData:
    """
    Seed rows for a full-lattice run.

    The window holds the packet over packet.slow_time slow steps with room
    for radiation at the fastest group velocity on both sides.

    Args:
        model: Lattice model being simulated
        packet: Envelope and resolution
        reduced: Reduced equation supplying carrier, scales, p1 and p2

    Returns:
        InitialData with row m = 0, and row m = 1 for nikdv

    Raises:
        PacketSizingException: an explicit window is too small for the packet
    """
    config = get_numerics_config()
    eps = packet.epsilon
    if eps * packet.amplitude > config.perturbative_warning:
        logger.warning(
            f"epsilon * amplitude = {eps * packet.amplitude:.3g} exceeds {config.perturbative_warning}; "
            "outside the perturbative regime"
        )

    m1 = abs(reduced.scales.m1_float())
    gv = reduced.scales.m2_float() / reduced.scales.m1_float() if m1 else 0.0
    steps = packet.m_steps
    extent_fine = math.ceil(packet.extent / (eps * m1)) if m1 else 0
    spread = math.ceil(max(radiation_speed(model), abs(gv)) * steps)
    needed = 2 * (extent_fine + spread + config.boundary_cells) + 1
    cols = packet.cols or needed
    if cols < 2 * (extent_fine + config.boundary_cells) + 1 + math.ceil(abs(gv) * steps):
        raise PacketSizingException(
            "Window too small for the packet", cols=cols, needed=needed,
        )
    # centre the window on the packet's mid-run position; n2 = center at n = center / (eps M1)
    start = packet.center / (eps * reduced.scales.m1_float()) if m1 else 0.0
    n0 = round(start + gv * steps / 2) - cols // 2
    n = np.arange(cols) + n0

    if isinstance(model, NiKdVModel):
        rows = np.vstack([ansatz_field(reduced, packet, n, 0), ansatz_field(reduced, packet, n, 1)])
        direction = "periodic"
    else:
        rows = ansatz_field(reduced, packet, n, 0)[None, :]
        direction = "up_left" if gv < 0 else "up_right"
    rows = rows + float(model.background)

    edges = np.abs(rows[0, [0, -1]] - float(model.background))
    if np.max(edges) > config.edge_decay * max(packet.amplitude, 1e-300) * eps * 4:
        raise PacketSizingException("Packet does not decay at the window edges", edge=float(np.max(edges)))

    logger.info(
        f"Initial {model.kind} packet: N={packet.N}, cols={cols}, n0={n0}, "
        f"direction={direction}, steps={steps}"
    )
    return InitialData(rows=rows, n0=n0, direction=direction, packet=packet, background=float(model.background))
