"""
Difference calculus on multiple lattices.
"""
from .stirling import (
    StirlingTable,
    get_stirling_table,
    stirling,
    expansion_coefficient,
    transfer_matrix,
)
from .slow import SlowFunctionSample, slow_order
from .stencil import (
    N,
    M1,
    M2,
    EPS,
    ExpansionStencil,
    one_scale_stencil,
    two_scale_stencil,
    cross_shift_stencil,
)

__all__ = [
    "StirlingTable",
    "get_stirling_table",
    "stirling",
    "expansion_coefficient",
    "transfer_matrix",
    "SlowFunctionSample",
    "slow_order",
    "N",
    "M1",
    "M2",
    "EPS",
    "ExpansionStencil",
    "one_scale_stencil",
    "two_scale_stencil",
    "cross_shift_stencil",
]
