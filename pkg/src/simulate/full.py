"""
Full-Lattice Runs
Row-by-row evolution of the lattice equations from packet initial data
"""
import logging
from typing import List, Tuple

import numpy as np

from core.exception import InstabilityException, SingularConfigurationException, TruncatedRunException
from core.numerics_config import get_numerics_config
from models import FieldGrid, LatticeModel, NiKdVModel, QuadModel, step_nikdv
from simulate.packet import InitialData

logger = logging.getLogger(__name__)


def _bilinear_coefficients(model: QuadModel, old: np.ndarray) -> Tuple[np.ndarray, ...]:
    """
    R = a + b u01 + c u11 + d u01 u11 for every cell above the row.

    The equation is affine in each corner, so four evaluations fix it.
    """
    params = model.float_params()
    u00, u10 = old[:-1], old[1:]

    def r(x: float, y: float) -> np.ndarray:
        return model.equation({(0, 0): u00, (1, 0): u10, (0, 1): x, (1, 1): y}, params) + 0 * u00

    a = r(0.0, 0.0)
    b = r(1.0, 0.0) - a
    c = r(0.0, 1.0) - a
    d = r(1.0, 1.0) - a - b - c
    return a, b, c, d


def _quad_row(model: QuadModel, old: np.ndarray, direction: str, boundary: float,
              m: int, n0: int, delta_sing: float) -> Tuple[np.ndarray, float]:
    """Row m + 1 from row m with the upstream end held at the boundary value"""
    a, b, c, d = (x.tolist() for x in _bilinear_coefficients(model, old))
    cols = old.size
    new = [0.0] * cols
    smallest = float("inf")
    if direction == "up_right":
        new[0] = boundary
        cells = range(cols - 1)
    else:
        new[-1] = boundary
        cells = range(cols - 2, -1, -1)
    for j in cells:
        if direction == "up_right":
            known = new[j]
            numerator = a[j] + b[j] * known
            denominator = c[j] + d[j] * known
        else:
            known = new[j + 1]
            numerator = a[j] + c[j] * known
            denominator = b[j] + d[j] * known
        scale = max(1.0, abs(old[j]), abs(old[j + 1]), abs(known))
        if abs(denominator) < delta_sing * scale:
            site = (n0 + j + (1 if direction == "up_right" else 0), m + 1)
            raise SingularConfigurationException(
                f"{model.kind}: singular quad solve", site=site, denominator=denominator
            )
        smallest = min(smallest, abs(denominator))
        value = -numerator / denominator
        if direction == "up_right":
            new[j + 1] = value
        else:
            new[j] = value
    return np.array(new), smallest


def _edge_band(row: np.ndarray, background: float, cells: int, direction: str) -> float:
    deviation = np.abs(row - background)
    if direction == "up_left":
        return float(np.max(deviation[:cells]))
    if direction == "up_right":
        return float(np.max(deviation[-cells:]))
    return float(max(np.max(deviation[:cells]), np.max(deviation[-cells:])))


def run_full(model: LatticeModel, init: InitialData, m_steps: int) -> FieldGrid:
    """
    Fill m_steps rows above the seed rows.

    Quad models solve each new row from its upstream end, which is held at
    the background; nikdv steps periodic rows explicitly.

    Args:
        model: Lattice model
        init: Output of make_initial
        m_steps: Rows to compute past row 0

    Returns:
        FieldGrid with the smallest quad-solve denominator recorded

    Raises:
        SingularConfigurationException: a quad solve has a vanishing slope
        InstabilityException: the field grows past blowup_factor
        TruncatedRunException: the packet reaches the downstream edge
    """
    config = get_numerics_config()
    background = init.background
    seeds = np.asarray(init.rows, dtype=float)
    values = np.empty((m_steps + 1, init.cols))
    values[: min(len(seeds), m_steps + 1)] = seeds[: m_steps + 1]
    start = float(np.max(np.abs(seeds[0] - background)))
    smallest = float("inf")

    first = len(seeds)
    for m in range(first - 1, m_steps):
        if isinstance(model, NiKdVModel):
            row = step_nikdv(model, values[m], values[m - 1])
        else:
            row, slope = _quad_row(model, values[m], init.direction, background, m, init.n0, config.delta_sing)
            smallest = min(smallest, slope)
        peak = float(np.max(np.abs(row - background)))
        if not np.isfinite(peak) or (start > 0 and peak > config.blowup_factor * start):
            raise InstabilityException(f"{model.kind} lattice run blew up", step=m + 1, peak=peak)
        if start > 0 and _edge_band(row, background, config.boundary_cells, init.direction) > config.boundary_mass:
            raise TruncatedRunException(
                f"{model.kind} packet reached the window edge", last_valid_row=m,
            )
        values[m + 1] = row

    logger.info(f"Filled {m_steps} rows of {model.kind} ({init.cols} columns)")
    return FieldGrid(
        values=values,
        n0=init.n0,
        m0=0,
        boundary="periodic" if isinstance(model, NiKdVModel) else "fixed",
        filled_rows=m_steps + 1,
        min_denominator=None if smallest == float("inf") else smallest,
    )
