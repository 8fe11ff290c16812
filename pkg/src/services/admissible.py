"""
Admissible Service
Enumerates admissible carriers and emits allowed-region boundaries.
"""
import logging
from typing import Any, Dict, List

from models import NiKdVModel
from reduction import enumerate_admissible, pq_of, region_table
from repositories.artifacts import ArtifactRepository
from services.base import BaseService
from utils.str import format_rational

logger = logging.getLogger(__name__)

ADMISSIBLE_COLUMNS = ["cos_k", "M1", "M2", "group_velocity", "in_region"]
REGION_COLUMNS = ["r", "lower", "upper", "case"]


class AdmissibleService(BaseService[ArtifactRepository]):
    repository_class = ArtifactRepository
    command = "admissible"
    needs_carrier = False

    def admissible_rows(self) -> List[Dict[str, Any]]:
        bounds = self.config.admissible
        model = self.build_model()
        entries = enumerate_admissible(
            model, bounds.M2_max, bounds.cosk_denominator_max, sin_sign=self.config.carrier.sin_sign,
        )
        return [
            {
                "cos_k": format_rational(entry.cos_k),
                "M1": entry.M1,
                "M2": entry.M2,
                "group_velocity": format_rational(entry.ratio),
                "in_region": "" if entry.in_region is None else entry.in_region,
            }
            for entry in entries
        ]

    def region_rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "r": format_rational(row["r"]),
                "lower": float(row["lower"]),
                "upper": float(row["upper"]),
                "case": row["case"],
            }
            for row in region_table(self.config.admissible.r_grid())
        ]

    def run(self) -> Dict[str, Any]:
        model = self.build_model()
        rows = self.admissible_rows()
        self.repository.write_csv("admissible.csv", rows, columns=ADMISSIBLE_COLUMNS)
        regions = self.region_rows()
        self.repository.write_csv("regions.csv", regions, columns=REGION_COLUMNS)

        summary: Dict[str, Any] = {"model": model.kind, "admissible": len(rows), "region_rows": len(regions)}
        if not isinstance(model, NiKdVModel):
            pq = pq_of(model)
            summary["ratio"] = None if pq.ratio is None else format_rational(pq.ratio)
        logger.info(f"{model.kind}: {len(rows)} admissible carriers")
        return summary
