"""
Equation Export
Determining equations as plain JSON-ready records
"""
from typing import Any, Dict, List, Literal, Optional

import mpmath

from .symbols import DeterminingEquation


def _decimal(value: Any, digits: int) -> str:
    return mpmath.nstr(value, digits, strip_zeros=False)


def export_equations(equations: List[DeterminingEquation], digits: int = 20, tol: float = 0.0,
                     reduced_variable: Optional[Literal["difference", "sum"]] = None) -> List[Dict[str, Any]]:
    """
    Records {order, harmonic, terms: [{symbols, re, im}]} with decimal strings.

    Args:
        digits: Significant digits of each coefficient
        tol: Drop coefficients with modulus at or below tol
        reduced_variable: Substitute onto (n2, m2) before exporting
    """
    records = []
    for equation in equations:
        if reduced_variable is not None:
            equation = equation.substituted(reduced_variable)
        terms = [
            {
                "symbols": [str(symbol) for symbol in monomial],
                "re": _decimal(mpmath.re(coeff), digits),
                "im": _decimal(mpmath.im(coeff), digits),
            }
            for monomial, coeff in sorted(equation.terms.items(), key=lambda item: [s.sort_key for s in item[0]])
            if abs(coeff) > tol
        ]
        records.append({"order": equation.eps_order, "harmonic": equation.harmonic, "terms": terms})
    return records
