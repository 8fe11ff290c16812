"""
Far-field reductions.
Admissible scales, allowed regions and closed-form reduced equations.
"""
from .wavenumber import Wavenumber, as_wavenumber
from .scales import (
    AdmissibleEntry,
    PQPair,
    ScaleTriple,
    allowed_region,
    enumerate_admissible,
    pq_of,
    region_case,
    region_table,
    scales_from_S,
    solve_scales,
)
from .reduced import ReducedEquation, build_reduced
from .closed_forms import (
    REDUCERS,
    reduce_hietarinta,
    reduce_mkdv,
    reduce_nikdv,
    reduce_vkvm,
)

__all__ = [
    "Wavenumber",
    "as_wavenumber",
    "AdmissibleEntry",
    "PQPair",
    "ScaleTriple",
    "allowed_region",
    "enumerate_admissible",
    "pq_of",
    "region_case",
    "region_table",
    "scales_from_S",
    "solve_scales",
    "ReducedEquation",
    "build_reduced",
    "REDUCERS",
    "reduce_mkdv",
    "reduce_hietarinta",
    "reduce_vkvm",
    "reduce_nikdv",
]
