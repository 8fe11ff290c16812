"""
Demodulation
Envelope extraction from full-lattice grids on the slow lattice
"""
import logging
import math
from typing import Literal, Optional, Sequence

import numpy as np

from core.exception import DemodulationException
from models import MODEL_REGISTRY, FieldGrid
from reduction.reduced import ReducedEquation
from simulate.envelope import EnvelopeHistory

logger = logging.getLogger(__name__)

Method = Literal["average", "spectral"]


def averaging_width(k: float) -> int:
    """Sites in one carrier wavelength"""
    if k == 0:
        raise DemodulationException("k = 0 has no carrier wavelength")
    return math.ceil(2 * math.pi / abs(k) - 1e-9)


def _moving_average(a: np.ndarray, width: int) -> np.ndarray:
    kernel = np.ones(width)
    if width % 2 == 0:
        # mean of the two boxes straddling the site, so the window stays centred
        kernel = np.concatenate([[0.5], np.ones(width - 1), [0.5]])
    return np.convolve(a, kernel / width, mode="same")


def _low_pass(a: np.ndarray, k: float) -> np.ndarray:
    spectrum = np.fft.fft(a)
    frequencies = 2 * np.pi * np.fft.fftfreq(a.size)
    spectrum[np.abs(frequencies) > abs(k) / 2] = 0
    return np.fft.ifft(spectrum)


def envelope_row(grid: FieldGrid, reduced: ReducedEquation, epsilon: float, m: int,
                 method: Method = "average") -> np.ndarray:
    """Band-limited a[n] = (u - b) conj(E) / eps along one row"""
    n = grid.n_axis()
    row = grid.values[m - grid.m0]
    a = (row - _background(reduced)) * np.conj(reduced.carrier.phase(n, m)) / epsilon
    if method == "spectral":
        return _low_pass(a, reduced.carrier.k)
    width = averaging_width(reduced.carrier.k)
    if 4 * width > row.size:
        raise DemodulationException("Window shorter than four carrier wavelengths", width=width, cols=row.size)
    return _moving_average(a, width)


def _background(reduced: ReducedEquation) -> float:
    return float(MODEL_REGISTRY[reduced.model].background)


def slow_sites(reduced: ReducedEquation, epsilon: float, n2: Sequence[int], m: int) -> np.ndarray:
    """Nearest fine n to each n2 at row m"""
    m1, m2 = reduced.scales.m1_float(), reduced.scales.m2_float()
    sign = 1 if reduced.reduced_variable == "difference" else -1
    return np.rint((np.asarray(n2, dtype=float) / epsilon + sign * m2 * m) / m1).astype(int)


def demodulate(grid: FieldGrid, reduced: ReducedEquation, epsilon: float, n2: Sequence[int],
               slow_times: Optional[Sequence[int]] = None, method: Method = "average") -> EnvelopeHistory:
    """
    Envelope on the slow lattice.

    Args:
        grid: Filled full-lattice grid
        reduced: Reduced equation supplying carrier and scales
        epsilon: 1/N of the run
        n2: Integer n2 sites to sample
        slow_times: Integer m2 values; every complete slow step by default
        method: Moving average over one wavelength, or an FFT low-pass

    Returns:
        EnvelopeHistory tagged "demodulated"

    Raises:
        DemodulationException: sample sites fall outside the grid, or the
            window is too short to average
    """
    N = round(1 / epsilon)
    if slow_times is None:
        slow_times = range((grid.rows - 1) // (N * N) + 1)
    n2 = np.asarray(n2, dtype=int)
    rows = []
    for t in slow_times:
        m = int(t) * N * N
        if m - grid.m0 >= grid.rows:
            raise DemodulationException("Slow time beyond the filled rows", m2=t, rows=grid.rows)
        band = envelope_row(grid, reduced, epsilon, m, method)
        columns = slow_sites(reduced, epsilon, n2, m) - grid.n0
        if columns.min() < 0 or columns.max() >= grid.shape[1]:
            raise DemodulationException("Slow sites outside the grid", m2=t)
        rows.append(band[columns])
    logger.debug(f"Demodulated {len(rows)} slow times over {n2.size} sites ({method})")
    return EnvelopeHistory(
        values=np.array(rows),
        n2=n2,
        times=np.asarray(list(slow_times)),
        source="demodulated",
        metadata={"model": reduced.model, "epsilon": epsilon, "method": method},
    )


def second_harmonic_ratio(grid: FieldGrid, reduced: ReducedEquation, epsilon: float, m: int = 0) -> float:
    """
    |x| in the best fit of the 2k band of row m by eps^2 (x phi^2 E^2 + c.c.).

    phi is the demodulated envelope on the same row; for a faithful
    ansatz |x| approaches |p1|.
    """
    n = grid.n_axis()
    row = grid.values[m - grid.m0] - _background(reduced)
    k = reduced.carrier.k
    spectrum = np.fft.fft(row)
    frequencies = 2 * np.pi * np.fft.fftfreq(row.size)
    target = math.remainder(2 * k, 2 * math.pi)
    distance = np.abs(np.angle(np.exp(1j * (np.abs(frequencies) - abs(target)))))
    spectrum[distance > abs(k) / 2] = 0
    band = np.real(np.fft.ifft(spectrum))

    phi = envelope_row(grid, reduced, epsilon, m)
    carrier = reduced.carrier.phase(n, m)
    basis = epsilon * epsilon * phi * phi * carrier * carrier
    design = np.column_stack([2 * np.real(basis), -2 * np.imag(basis)])
    solution, *_ = np.linalg.lstsq(design, band, rcond=None)
    return float(math.hypot(solution[0], solution[1]))
