"""
Simulation Service
Full-lattice packet runs and far-field convergence studies.
"""
import logging
import math
from typing import Any, Dict, List, Tuple

import numpy as np

from models import FieldGrid, LatticeModel
from reduction import ReducedEquation
from repositories.artifacts import ArtifactRepository
from services.base import BaseService
from simulate import (
    EnvelopeHistory,
    PacketSpec,
    demodulate,
    make_initial,
    reduced_reference,
    run_full,
    second_harmonic_ratio,
    validate_far_field,
)

logger = logging.getLogger(__name__)

ENVELOPE_COLUMNS = ["source", "m2", "n2", "re", "im", "abs"]
CONVERGENCE_COLUMNS = [
    "epsilon", "N", "error", "ratio", "demodulation_floor", "second_harmonic", "min_denominator", "cols", "rows",
]
FIELD_COLUMNS = ["n", "m", "value"]


def envelope_rows(history: EnvelopeHistory, times: List[int]) -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = []
    for t in times:
        for row in history.snapshot_rows(t):
            rows.append({"source": history.source, "m2": t, **row})
    return rows


class SimulationService(BaseService[ArtifactRepository]):
    """One packet run at the first epsilon of the config"""

    repository_class = ArtifactRepository
    command = "simulate"

    def packet(self, epsilon: float) -> PacketSpec:
        spec = self.config.simulation
        return PacketSpec(
            profile=spec.profile,
            amplitude=spec.amplitude,
            width=spec.width,
            center=spec.center,
            epsilon=epsilon,
            harmonics_included=spec.harmonics_included,
            slow_time=spec.slow_time,
        )

    def prepare(self) -> Tuple[LatticeModel, ReducedEquation]:
        model = self.build_model()
        reduced = self.reduce(model, self.wavenumber())
        if self.config.simulation.strict_slow_lattice:
            for epsilon in self.config.simulation.epsilons():
                reduced.scales.require_divisibility(round(1 / epsilon))
        return model, reduced

    def write_field(self, grid: FieldGrid) -> None:
        self.repository.write_grid("field.latg", grid)
        last = grid.rows - 1
        final = [
            {"n": int(n), "m": int(last + grid.m0), "value": float(np.real(v))}
            for n, v in zip(grid.n_axis(), grid.values[last])
        ]
        self.repository.write_csv("field_final.csv", final, columns=FIELD_COLUMNS)

    def run(self) -> Dict[str, Any]:
        spec = self.config.simulation
        model, reduced = self.prepare()
        epsilon = spec.epsilons()[0]
        packet = self.packet(epsilon)

        grid = run_full(model, make_initial(model, packet, reduced), packet.m_steps)
        reach = math.ceil(packet.extent)
        n2 = np.arange(math.floor(packet.center) - reach, math.ceil(packet.center) + reach + 1)
        times = sorted({t for t in spec.snapshots if 0 <= t <= spec.slow_time} | {0, spec.slow_time})
        lattice = demodulate(grid, reduced, epsilon, n2, slow_times=range(spec.slow_time + 1), method=spec.method)
        predicted = reduced_reference(reduced, lattice.initial, spec.slow_time, n2, spec.reference, spec.dt)

        rows = envelope_rows(lattice, times) + envelope_rows(predicted, times)
        self.repository.write_csv("envelope.csv", rows, columns=ENVELOPE_COLUMNS)
        if spec.dump_grid:
            self.write_field(grid)

        scale = float(np.max(np.abs(lattice.final))) or 1.0
        error = float(np.max(np.abs(lattice.final - predicted.final))) / scale
        summary: Dict[str, Any] = {
            "model": model.kind,
            "N": packet.N,
            "rows": grid.rows,
            "cols": grid.shape[1],
            "max_residual": grid.max_residual(model),
            "error": error,
            "reference": spec.reference,
        }
        if spec.harmonics_included >= 2 and spec.amplitude > 0:
            summary["second_harmonic"] = second_harmonic_ratio(grid, reduced, epsilon, 0)
            summary["p1_abs"] = abs(complex(reduced.p1))
        logger.info(f"{model.kind} packet run at N={packet.N}: far-field error {error:.4g}")
        return summary


class ValidationService(SimulationService):
    """Far-field convergence over every epsilon of the config"""

    command = "validate"

    def run(self) -> Dict[str, Any]:
        spec = self.config.simulation
        model, reduced = self.prepare()
        report = validate_far_field(
            model, reduced, spec.eps_list, spec.slow_time,
            amplitude=spec.amplitude, width=spec.width, profile=spec.profile, method=spec.method,
            reference=spec.reference, dt=spec.dt,
        )
        table = [{column: row.get(column) for column in CONVERGENCE_COLUMNS} for row in report.table()]
        self.repository.write_csv("convergence.csv", table, columns=CONVERGENCE_COLUMNS)
        self.repository.write_json("convergence.json", report.model_dump(mode="json"))
        return {
            "model": model.kind,
            "errors": report.errors,
            "ratios": [row.ratio for row in report.rows],
            "monotone": report.is_monotone,
        }
