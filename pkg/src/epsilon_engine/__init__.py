"""
Epsilon expansion engine.
Derives the reduced equation of any lattice polynomial numerically.
"""
from .export import export_equations
from .expansion import carrier_factor, expand, factor_series, linear_symbol
from .hierarchy import derive, solve_hierarchy
from .symbols import DeterminingEquation, EnvelopeSymbol, SeriesTerm, monomial_key, psi
from .verify import VerificationReport, closed_form, verify_closed_forms

__all__ = [
    "DeterminingEquation",
    "EnvelopeSymbol",
    "SeriesTerm",
    "monomial_key",
    "psi",
    "carrier_factor",
    "expand",
    "factor_series",
    "linear_symbol",
    "derive",
    "solve_hierarchy",
    "export_equations",
    "VerificationReport",
    "closed_form",
    "verify_closed_forms",
]
