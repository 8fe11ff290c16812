"""
Base Repository Class
Provides file storage under one output directory with a digest ledger.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from core.exception import ArtifactException
from settings import settings
from utils.str import md5_bytes

logger = logging.getLogger(__name__)


class BaseRepository:
    """
    Base repository class with file storage capabilities.
    Every write goes through `write_bytes`, which records the file's md5.

    Example:
        class ArtifactRepository(BaseRepository):
            def write_text(self, name, text):
                return self.write_bytes(name, text.encode("utf-8"))

        # Usage
        repo = ArtifactRepository("data/runs/demo")
        path = repo.write_text("notes.txt", "hello")
        repo.written  # {"notes.txt": "<md5>"}
    """

    def __init__(self, directory: Optional[Union[str, Path]] = None, prefix: str = ""):
        """
        Initialize base repository.

        Args:
            directory: Output directory (default: settings.output_dir)
            prefix: Prefix added to every file name
        """
        self.directory = Path(directory or settings.output_dir)
        self.prefix = prefix
        self._written: Dict[str, str] = {}
        self._sizes: Dict[str, int] = {}

    def path_for(self, name: str) -> Path:
        return self.directory / f"{self.prefix}{name}"

    def ensure_directory(self) -> None:
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logger.error(f"Cannot create output directory {self.directory}: {e}")
            raise ArtifactException("Cannot create output directory", path=str(self.directory), error=str(e))

    def write_bytes(self, name: str, payload: bytes) -> Path:
        """
        Write a file and record its digest.

        Args:
            name: File name relative to the output directory
            payload: File content

        Returns:
            Path of the written file

        Raises:
            ArtifactException: The file cannot be written
        """
        self.ensure_directory()
        path = self.path_for(name)
        try:
            path.write_bytes(payload)
        except OSError as e:
            logger.error(f"Failed to write {path}: {e}")
            raise ArtifactException("Cannot write output file", path=str(path), error=str(e))
        self._written[path.name] = md5_bytes(payload)
        self._sizes[path.name] = len(payload)
        logger.debug(f"Wrote {path} ({len(payload)} bytes)")
        return path

    def read_bytes(self, name: str) -> bytes:
        path = self.path_for(name)
        try:
            return path.read_bytes()
        except OSError as e:
            raise ArtifactException("Cannot read file", path=str(path), error=str(e))

    @property
    def written(self) -> Dict[str, str]:
        """File name -> md5 of every file written so far"""
        return dict(self._written)

    def size_of(self, name: str) -> int:
        return self._sizes[name]

    def written_names(self) -> List[str]:
        return sorted(self._written)
