"""
Envelope Evolution
Envelope histories and the reduced discrete and semi-continuous evolutions
"""
import logging
from typing import Any, Callable, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.exception import InstabilityException, NumericalFailureException
from core.numerics_config import get_numerics_config
from reduction.reduced import ReducedEquation
from simulate.mean_field import mean_field

logger = logging.getLogger(__name__)

Source = Literal["demodulated", "reduced", "semicontinuous", "ansatz"]


class EnvelopeHistory(BaseModel):
    """phi over a slow window, one row per recorded slow time"""

    values: Any = Field(..., description="Complex array indexed [time, n2]")
    n2: Any = Field(..., description="Integer n2 axis")
    times: Any = Field(..., description="Slow times of the rows")
    source: Source
    metadata: Dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("values")
    @classmethod
    def _finite(cls, values: Any) -> np.ndarray:
        array = np.atleast_2d(np.asarray(values, dtype=complex))
        if not np.all(np.isfinite(array)):
            raise NumericalFailureException("Envelope history holds non-finite values")
        return array

    @property
    def initial(self) -> np.ndarray:
        return self.values[0]

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]

    def at(self, time: float) -> np.ndarray:
        index = int(np.argmin(np.abs(np.asarray(self.times, dtype=float) - time)))
        return self.values[index]

    def edge_mass(self, cells: int) -> float:
        """Largest |phi| within `cells` of either edge over all rows"""
        band = np.concatenate([self.values[:, :cells], self.values[:, -cells:]], axis=1)
        return float(np.max(np.abs(band))) if band.size else 0.0

    def snapshot_rows(self, time: Optional[float] = None) -> List[Dict[str, float]]:
        """(n2, re, im, abs) rows of one snapshot, the final one by default"""
        phi = self.final if time is None else self.at(time)
        return [
            {"n2": int(n), "re": float(v.real), "im": float(v.imag), "abs": float(abs(v))}
            for n, v in zip(self.n2, phi)
        ]


def _shifted(phi: np.ndarray, offset: int) -> np.ndarray:
    """phi[n + offset] with zeros outside the window"""
    out = np.zeros_like(phi)
    if offset > 0:
        out[:-offset] = phi[offset:]
    elif offset < 0:
        out[-offset:] = phi[:offset]
    else:
        out[:] = phi
    return out


def reduced_increment(reduced: ReducedEquation, phi: np.ndarray) -> np.ndarray:
    """c1 W + c2 D + cubic |phi|^2 phi + nonlocal psi0 phi"""
    second = _shifted(phi, 2) - 2 * phi + _shifted(phi, -2)
    first = _shifted(phi, 1) - 2 * phi + _shifted(phi, -1)
    increment = reduced.c1 * second + reduced.c2 * first + reduced.cubic * np.abs(phi) ** 2 * phi
    if reduced.has_nonlocal:
        increment = increment + reduced.nonlocal_coupling * mean_field(phi, reduced.p2) * phi
    return increment


def run_reduced(reduced: ReducedEquation, phi0: Any, m2_steps: int, n2: Optional[Any] = None) -> EnvelopeHistory:
    """
    Iterate phi[m2+1] = phi - (c1 W + c2 D + cubic |phi|^2 phi + nonlocal psi0 phi).

    Args:
        reduced: Reduced equation
        phi0: Envelope on consecutive integer n2
        m2_steps: Number of slow steps
        n2: n2 axis of phi0; 0.. by default

    Returns:
        EnvelopeHistory with m2_steps + 1 rows

    Raises:
        InstabilityException: max |phi| exceeds blowup_factor times its start
    """
    config = get_numerics_config()
    phi = np.asarray(phi0, dtype=complex).copy()
    start = float(np.max(np.abs(phi))) if phi.size else 0.0
    rows = [phi.copy()]
    for step in range(1, m2_steps + 1):
        phi = phi - reduced_increment(reduced, phi)
        peak = float(np.max(np.abs(phi))) if phi.size else 0.0
        if not np.isfinite(peak) or (start > 0 and peak > config.blowup_factor * start):
            raise InstabilityException("Reduced map blew up", step=step, peak=peak)
        rows.append(phi.copy())

    history = EnvelopeHistory(
        values=np.array(rows),
        n2=np.arange(phi.size) if n2 is None else np.asarray(n2),
        times=np.arange(m2_steps + 1),
        source="reduced",
        metadata={"model": reduced.model, "cos_k": reduced.wavenumber.label},
    )
    if phi.size and history.edge_mass(config.boundary_cells) > config.boundary_mass:
        logger.warning(f"Reduced envelope reached the window edge: {history.edge_mass(config.boundary_cells):.3g}")
    return history


def rk4(rhs: Callable[[np.ndarray], np.ndarray], phi0: np.ndarray, t_end: float, dt: float,
        sample_every: int = 1) -> List[np.ndarray]:
    """Classical Runge-Kutta; returns every sample_every-th state, the last always"""
    steps = int(round(t_end / dt))
    phi = np.asarray(phi0, dtype=complex).copy()
    states = [phi.copy()]
    for step in range(1, steps + 1):
        k1 = rhs(phi)
        k2 = rhs(phi + 0.5 * dt * k1)
        k3 = rhs(phi + 0.5 * dt * k2)
        k4 = rhs(phi + dt * k3)
        phi = phi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(phi)):
            raise InstabilityException("Semi-continuous integration diverged", step=step)
        if step % sample_every == 0 or step == steps:
            states.append(phi.copy())
    return states


def run_semicontinuous(reduced: ReducedEquation, phi0: Any, t_end: float, dt: float,
                       n2: Optional[Any] = None, check_halving: bool = True) -> EnvelopeHistory:
    """
    Integrate d phi / dt = -(c1 W + c2 D + cubic |phi|^2 phi + nonlocal psi0 phi).

    Args:
        reduced: Reduced equation
        phi0: Initial envelope
        t_end: Final slow time
        dt: Step
        check_halving: Repeat with dt / 2 and compare the end states

    Raises:
        InstabilityException: the halved run disagrees beyond halving_tol
    """
    config = get_numerics_config()
    rhs = lambda phi: -reduced_increment(reduced, phi)
    sample_every = max(1, int(round(1 / dt)))
    states = rk4(rhs, np.asarray(phi0, dtype=complex), t_end, dt, sample_every)
    if check_halving:
        halved = rk4(rhs, np.asarray(phi0, dtype=complex), t_end, dt / 2, 2 * sample_every)
        scale = max(1.0, float(np.max(np.abs(halved[-1]))))
        difference = float(np.max(np.abs(states[-1] - halved[-1]))) / scale
        if difference > config.halving_tol:
            raise InstabilityException("Step halving disagrees", difference=difference, dt=dt)
        logger.debug(f"Step-halving difference {difference:.3g} at dt={dt}")

    steps = int(round(t_end / dt))
    times = [min(i * sample_every, steps) * dt for i in range(len(states))]
    size = np.asarray(phi0).size
    return EnvelopeHistory(
        values=np.array(states),
        n2=np.arange(size) if n2 is None else np.asarray(n2),
        times=np.array(times),
        source="semicontinuous",
        metadata={"model": reduced.model, "dt": dt},
    )
