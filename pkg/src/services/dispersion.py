"""
Dispersion Service
Tabulates omega, group velocity and |Omega| over a k-grid.
"""
import logging
from typing import Any, Dict

from models import dispersion_sweep
from repositories.artifacts import ArtifactRepository
from services.base import BaseService

logger = logging.getLogger(__name__)

DISPERSION_COLUMNS = ["k", "omega", "group_velocity", "omega_modulus", "reality"]


class DispersionService(BaseService[ArtifactRepository]):
    repository_class = ArtifactRepository
    command = "dispersion"
    needs_carrier = False

    def run(self) -> Dict[str, Any]:
        model = self.build_model()
        rows = dispersion_sweep(model, self.config.sweep.grid())
        violated = sum(1 for row in rows if row["reality"] != "ok")
        if violated:
            logger.warning(f"{model.kind}: {violated} of {len(rows)} grid points violate the reality condition")
        self.repository.write_csv("dispersion.csv", rows, columns=DISPERSION_COLUMNS)
        return {"model": model.kind, "rows": len(rows), "reality_violations": violated}
