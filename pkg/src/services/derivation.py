"""
Derivation Service
Runs the expansion engine at the configured carrier and cross-checks closed forms.
"""
import logging
from collections import Counter
from typing import Any, Dict, Optional

from core.exception import DeviationException, DomainException
from core.numerics_config import get_numerics_config
from epsilon_engine import derive, expand, export_equations, verify_closed_forms
from epsilon_engine.verify import compare
from models import LatticeModel, NiKdVModel
from reduction import ReducedEquation, Wavenumber
from repositories.artifacts import ArtifactRepository
from schemas.report import CoefficientReport, DerivationReport, VerificationSummary
from services.base import BaseService

logger = logging.getLogger(__name__)


class DerivationService(BaseService[ArtifactRepository]):
    repository_class = ArtifactRepository
    command = "derive"

    def closed_form_deviation(self, model: LatticeModel, wavenumber: Wavenumber,
                              engine: ReducedEquation) -> Dict[str, float]:
        """Deviations from the closed form at the same carrier and scales"""
        options = self.config.derive
        if isinstance(model, NiKdVModel) or options.linearized or options.reduced_variable != "difference":
            return {}
        closed = self.reduce(model, wavenumber)
        deviations = compare(model.kind, engine, closed).deviations
        tolerance = get_numerics_config().verify_tol
        for name, deviation in deviations.items():
            if deviation > tolerance:
                raise DeviationException(
                    f"{model.kind}: engine {name} deviates from the closed form",
                    coefficient=name, deviation=deviation, cos_k=wavenumber.label,
                )
        return deviations

    def verification(self, model: LatticeModel) -> Optional[VerificationSummary]:
        options = self.config.derive
        if not options.verify:
            return None
        if isinstance(model, NiKdVModel):
            raise DomainException("nikdv has no closed forms to verify against")
        report = verify_closed_forms(model, sample_count=options.samples, seed=self.config.seed)
        logger.info(f"Verified {len(report.points)} points, max deviation {report.max_deviation:.3g}")
        return VerificationSummary(
            seed=report.seed,
            samples=len(report.points),
            tolerance=report.tolerance,
            max_deviation=report.max_deviation,
            worst_by_coefficient=report.worst_by_coefficient(),
            worst_printed=report.worst_printed(),
        )

    def run(self) -> Dict[str, Any]:
        options = self.config.derive
        model = self.build_model()
        wavenumber = self.wavenumber()
        scales = self.scales(model, wavenumber)
        engine = derive(model, wavenumber, scales, reduced_variable=options.reduced_variable,
                        linearized=options.linearized)

        equations = None
        if options.export_equations:
            engine_scales = scales
            if options.reduced_variable == "sum":
                engine_scales = scales.model_copy(update={"M2": -scales.M2})
            raw = expand(model, wavenumber, engine_scales, linearized=options.linearized, ledger=Counter())
            equations = export_equations(raw, digits=options.digits, reduced_variable=options.reduced_variable)

        report = DerivationReport(
            coefficients=CoefficientReport.from_reduced(engine),
            linearized=options.linearized,
            equations=equations,
            verification=self.verification(model),
            closed_form_deviation=self.closed_form_deviation(model, wavenumber, engine),
        )
        self.repository.write_json("derivation.json", report.model_dump(mode="json"))

        summary: Dict[str, Any] = {
            "model": model.kind,
            "reduced_variable": options.reduced_variable,
            "C1": [report.coefficients.C1.re, report.coefficients.C1.im],
            "C2": [report.coefficients.C2.re, report.coefficients.C2.im],
            "C3": [report.coefficients.C3.re, report.coefficients.C3.im],
        }
        if report.closed_form_deviation:
            summary["closed_form_max_deviation"] = max(report.closed_form_deviation.values())
        if report.verification is not None:
            summary["max_deviation"] = report.verification.max_deviation
        return summary
