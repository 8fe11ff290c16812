"""
Artifact Repository
CSV tables, JSON reports, field-grid dumps and the run manifest.
"""
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from core.exception import ArtifactException
from models.grid import FieldGrid
from repositories.base import BaseRepository
from schemas.report import Manifest, ManifestEntry
from settings import settings

logger = logging.getLogger(__name__)

SCHEMA_LINE = "# schema_version="
MANIFEST_NAME = "manifest.json"


class ArtifactRepository(BaseRepository):
    """
    Writes every output of a run.

    CSV: comma separated, '.' decimal, header row, preceded by a
    `# schema_version=<v>` line. JSON: UTF-8, sorted keys, with a
    `schema_version` field.
    """

    def __init__(self, directory: Optional[Any] = None, prefix: str = "",
                 schema_version: Optional[str] = None):
        super().__init__(directory, prefix)
        self.schema_version = schema_version or settings.schema_version

    # ==================== CSV ====================

    def write_csv(self, name: str, rows: Sequence[Dict[str, Any]],
                  columns: Optional[List[str]] = None) -> Path:
        """
        Write rows as a CSV table.

        Args:
            name: File name
            rows: One mapping per row
            columns: Column order; keys of the first row when omitted

        Returns:
            Path of the written file
        """
        frame = pd.DataFrame(list(rows), columns=columns)
        buffer = io.StringIO()
        buffer.write(f"{SCHEMA_LINE}{self.schema_version}\n")
        frame.to_csv(buffer, index=False, sep=",", decimal=".", lineterminator="\n")
        logger.info(f"Writing {len(frame)} rows to {name}")
        return self.write_bytes(name, buffer.getvalue().encode("utf-8"))

    def read_csv(self, name: str) -> pd.DataFrame:
        """Read a table written by write_csv, checking its schema line"""
        text = self.read_bytes(name).decode("utf-8")
        first, _, body = text.partition("\n")
        if not first.startswith(SCHEMA_LINE):
            raise ArtifactException("CSV has no schema_version line", path=str(self.path_for(name)))
        version = first[len(SCHEMA_LINE):].strip()
        if version != self.schema_version:
            logger.warning(f"{name}: schema_version {version} differs from {self.schema_version}")
        if not body.strip():
            return pd.DataFrame()
        return pd.read_csv(io.StringIO(body))

    # ==================== JSON ====================

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        document = dict(payload)
        document.setdefault("schema_version", self.schema_version)
        text = json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=True)
        return self.write_bytes(name, (text + "\n").encode("utf-8"))

    def read_json(self, name: str) -> Dict[str, Any]:
        try:
            return json.loads(self.read_bytes(name).decode("utf-8"))
        except json.JSONDecodeError as e:
            raise ArtifactException("Malformed JSON artifact", path=str(self.path_for(name)), error=str(e))

    # ==================== Field grids ====================

    def write_grid(self, name: str, grid: FieldGrid) -> Path:
        """Binary dump: LATG header then little-endian float64 row-major"""
        logger.info(f"Dumping {grid.rows}x{grid.shape[1]} grid to {name}")
        return self.write_bytes(name, grid.to_bytes())

    def read_grid(self, name: str) -> FieldGrid:
        return FieldGrid.from_bytes(self.read_bytes(name))

    # ==================== Manifest ====================

    def write_manifest(self, manifest: Manifest) -> Path:
        """Write the manifest with digests of every file written before it"""
        files = [
            ManifestEntry(path=file_name, md5=digest, bytes=self.size_of(file_name))
            for file_name, digest in sorted(self.written.items())
            if file_name != f"{self.prefix}{MANIFEST_NAME}"
        ]
        manifest = manifest.model_copy(update={"files": files, "schema_version": self.schema_version})
        return self.write_json(MANIFEST_NAME, manifest.model_dump(mode="json"))

    def read_manifest(self) -> Manifest:
        return Manifest.model_validate(self.read_json(MANIFEST_NAME))


__all__ = ["ArtifactRepository", "MANIFEST_NAME", "SCHEMA_LINE"]
