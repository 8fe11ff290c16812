"""
Repositories
File storage for run artifacts.
"""
from .artifacts import MANIFEST_NAME, SCHEMA_LINE, ArtifactRepository
from .base import BaseRepository

__all__ = ["BaseRepository", "ArtifactRepository", "MANIFEST_NAME", "SCHEMA_LINE"]
