"""
Coefficient Service
Closed-form reduced-equation coefficients at one carrier or over admissible carriers.
"""
import logging
from typing import Any, Dict, List

from core.exception import DegenerateException, InadmissibleException
from reduction import Wavenumber, enumerate_admissible
from repositories.artifacts import ArtifactRepository
from schemas.report import CoefficientReport
from services.base import BaseService
from utils.str import format_rational

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "cos_k", "M1", "M2",
    "C1_re", "C1_im", "C2_re", "C2_im", "C3_re", "C3_im",
    "continuum_re", "continuum_im", "p1_re", "p1_im", "p2",
]


def _split(name: str, value: complex) -> Dict[str, float]:
    z = complex(value)
    return {f"{name}_re": z.real, f"{name}_im": z.imag}


class CoefficientService(BaseService[ArtifactRepository]):
    repository_class = ArtifactRepository
    command = "coefficients"

    def report(self) -> CoefficientReport:
        model = self.build_model()
        reduced = self.reduce(model, self.wavenumber())
        return CoefficientReport.from_reduced(reduced)

    def sweep_rows(self) -> List[Dict[str, Any]]:
        """C1, C2, C3 at every admissible carrier within the configured bounds"""
        model = self.build_model()
        bounds = self.config.admissible
        sin_sign = self.config.carrier.sin_sign
        rows: List[Dict[str, Any]] = []
        for entry in enumerate_admissible(model, bounds.M2_max, bounds.cosk_denominator_max, sin_sign=sin_sign):
            carrier = self.config.carrier.model_copy(update={"cos_k": format_rational(entry.cos_k), "M2": str(entry.M2)})
            service = self.__class__(self.config.model_copy(update={"carrier": carrier}), repository=self.repository)
            try:
                reduced = service.reduce(model, Wavenumber(cos_k=entry.cos_k, sin_sign=sin_sign))
            except (DegenerateException, InadmissibleException) as e:
                logger.warning(f"Skipping cos k = {format_rational(entry.cos_k)}, M2 = {entry.M2}: {e}")
                continue
            row: Dict[str, Any] = {"cos_k": format_rational(entry.cos_k), "M1": entry.M1, "M2": entry.M2}
            for name, value in (("C1", reduced.C1), ("C2", reduced.C2), ("C3", reduced.C3),
                                ("continuum", reduced.continuum), ("p1", reduced.p1)):
                row.update(_split(name, value))
            row["p2"] = "" if reduced.p2 is None else complex(reduced.p2).real
            rows.append(row)
        return rows

    def run(self) -> Dict[str, Any]:
        report = self.report()
        self.repository.write_json("coefficients.json", report.model_dump(mode="json"))
        summary: Dict[str, Any] = {
            "model": report.model,
            "cos_k": report.cos_k,
            "M1": report.M1,
            "M2": report.M2,
            "C1": [report.C1.re, report.C1.im],
            "C2": [report.C2.re, report.C2.im],
            "C3": [report.C3.re, report.C3.im],
        }
        if self.config.admissible.coefficient_sweep:
            rows = self.sweep_rows()
            self.repository.write_csv("coefficient_sweep.csv", rows, columns=SWEEP_COLUMNS)
            summary["sweep_rows"] = len(rows)
        return summary
