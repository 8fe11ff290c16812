"""
Field Grid
Rectangular window of lattice values with a compact binary dump
"""
import logging
import struct
from typing import Any, Iterator, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.exception import DegenerateException
from models.base import LatticeModel, QuadModel

logger = logging.getLogger(__name__)

# magic, format version, rows, cols, n0, m0, complex flag
GRID_MAGIC = b"LATG"
GRID_VERSION = 1
_HEADER = struct.Struct("<4sHqqqqB")


class FieldGrid(BaseModel):
    """
    Values u[m, n] over a window; row index is the time-like m.

    n0, m0 are the lattice coordinates of values[0, 0].
    """

    values: Any = Field(..., description="2-D array indexed [m - m0, n - n0]")
    n0: int = Field(default=0, description="Lattice n of the first column")
    m0: int = Field(default=0, description="Lattice m of the first row")
    boundary: Literal["fixed", "periodic"] = Field(default="fixed", description="Boundary policy in n")
    filled_rows: Optional[int] = Field(default=None, description="Rows holding computed data")
    min_denominator: Optional[float] = Field(default=None, description="Smallest quad-solve slope met")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("values")
    @classmethod
    def _two_dimensional(cls, values: Any) -> np.ndarray:
        array = np.asarray(values)
        if array.ndim != 2:
            raise DegenerateException("FieldGrid values must be 2-D", ndim=array.ndim)
        return array

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    @property
    def rows(self) -> int:
        return self.filled_rows if self.filled_rows is not None else self.values.shape[0]

    def at(self, n: int, m: int) -> Any:
        return self.values[m - self.m0, n - self.n0]

    def n_axis(self) -> np.ndarray:
        return np.arange(self.values.shape[1]) + self.n0

    def m_axis(self) -> np.ndarray:
        return np.arange(self.values.shape[0]) + self.m0

    def iter_cells(self) -> Iterator[Tuple[int, int, Any]]:
        """(n, m, value) over filled rows"""
        for i in range(self.rows):
            for j in range(self.values.shape[1]):
                yield j + self.n0, i + self.m0, self.values[i, j]

    def max_residual(self, model: LatticeModel) -> float:
        """Largest residual over every interior stencil placement"""
        rows, cols = self.rows, self.values.shape[1]
        shifts = model.shifts
        dn_lo = min(s[0] for s in shifts)
        dn_hi = max(s[0] for s in shifts)
        dm_lo = min(s[1] for s in shifts)
        dm_hi = max(s[1] for s in shifts)
        i_lo, i_hi = -dm_lo, rows - dm_hi
        if i_hi <= i_lo:
            return 0.0
        corners = {}
        for dn, dm in shifts:
            block = self.values[i_lo + dm:i_hi + dm]
            if self.boundary == "periodic":
                corners[(dn, dm)] = np.roll(block, -dn, axis=1)
            else:
                corners[(dn, dm)] = block[:, -dn_lo + dn:cols - dn_hi + dn]
        # equations are plain arithmetic, so they evaluate on whole arrays
        residual = model.equation(corners, model.float_params())
        return float(np.max(np.abs(residual))) if np.size(residual) else 0.0

    def to_bytes(self) -> bytes:
        """Header then little-endian float64 (real, or interleaved re/im) row-major"""
        is_complex = np.iscomplexobj(self.values)
        data = self.values[: self.rows]
        payload = np.ascontiguousarray(data, dtype="<c16" if is_complex else "<f8").tobytes()
        header = _HEADER.pack(GRID_MAGIC, GRID_VERSION, data.shape[0], data.shape[1],
                              self.n0, self.m0, int(is_complex))
        return header + payload

    @classmethod
    def from_bytes(cls, blob: bytes) -> "FieldGrid":
        magic, version, rows, cols, n0, m0, is_complex = _HEADER.unpack_from(blob)
        if magic != GRID_MAGIC or version != GRID_VERSION:
            raise DegenerateException("Not a field grid dump", magic=magic, version=version)
        dtype = "<c16" if is_complex else "<f8"
        values = np.frombuffer(blob, dtype=dtype, offset=_HEADER.size, count=rows * cols)
        return cls(values=values.reshape(rows, cols).copy(), n0=n0, m0=m0)


def constant_grid(model: QuadModel, rows: int, cols: int, value: Optional[float] = None) -> FieldGrid:
    """Grid filled with the background (or a given constant)"""
    fill = model.background if value is None else value
    return FieldGrid(values=np.full((rows, cols), float(fill)))
