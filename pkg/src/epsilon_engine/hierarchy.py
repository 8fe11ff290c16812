"""
Determining-Equation Hierarchy
Solves the equations order by order and reads off the reduced equation
"""
import logging
from collections import Counter
from typing import Any, Dict, List, Literal, Optional, Tuple

import mpmath

from core.exception import DegenerateException, InadmissibleException
from core.numerics_config import get_numerics_config
from models import LatticeModel
from reduction.reduced import ReducedEquation, build_reduced
from reduction.scales import ScaleTriple
from reduction.wavenumber import Wavenumber, as_wavenumber
from utils.numbers import to_mpc

from .expansion import expand
from .symbols import DeterminingEquation, monomial_key, psi

logger = logging.getLogger(__name__)


def _index(equations: List[DeterminingEquation]) -> Dict[Tuple[int, int], DeterminingEquation]:
    return {(eq.eps_order, eq.harmonic): eq for eq in equations}


def _equation(index: Dict[Tuple[int, int], DeterminingEquation], order: int, harmonic: int) -> DeterminingEquation:
    return index.get((order, harmonic)) or DeterminingEquation(eps_order=order, harmonic=harmonic)


def _solve_mean_field(eq02: DeterminingEquation, reference: Any, tol: float) -> Tuple[int, Optional[Any]]:
    """(order at which psi0 is fixed, local psi0 / |psi1|^2 when fixed at second order)"""
    pivot = eq02.coefficient(psi(0, 0, 0))
    source = eq02.coefficient(psi(1, 0, 0), psi(1, 0, 0, conjugated=True))
    if abs(pivot) > tol * reference:
        return 2, -source / pivot
    if abs(source) > tol * reference:
        raise DegenerateException("Mean field is forced at second order without a pivot", source=complex(source))
    return 3, None


def _solve_mean_field_relation(eq03: DeterminingEquation, reference: Any, tol: float) -> Optional[Any]:
    """p2 in psi0[n2] + psi0[n2+1] = p2 a[n2], or None when psi0 is left free"""
    d = eq03.coefficient(psi(0, 1, 0))
    kappa1 = eq03.coefficient(psi(1, 1, 0), psi(1, 0, 0, conjugated=True))
    kappa2 = eq03.coefficient(psi(1, 0, 0), psi(1, 1, 0, conjugated=True))
    if abs(d) <= tol * reference:
        if max(abs(kappa1), abs(kappa2)) > tol * reference:
            raise DegenerateException("Mean-field relation has a source but no psi0 term")
        logger.warning("Mean field undetermined at third order; taken as zero")
        return None
    if abs(kappa1 - kappa2) > tol * max(reference, abs(kappa1)):
        raise DegenerateException(
            "Mean-field source is not symmetric in the shifted envelope",
            kappa1=complex(kappa1), kappa2=complex(kappa2),
        )
    backward = eq03.coefficient(psi(0, -1, 0))
    if abs(backward + d) > tol * max(reference, abs(d)):
        logger.warning(f"Mean-field relation is not a central difference: {complex(backward)} vs {complex(-d)}")
    return -(kappa1 + kappa2) / (2 * d)


def solve_hierarchy(equations: List[DeterminingEquation], scales: ScaleTriple, model: LatticeModel,
                    wavenumber: Wavenumber,
                    reduced_variable: Literal["difference", "sum"] = "difference",
                    ledger: Optional[Dict[int, int]] = None) -> ReducedEquation:
    """
    Reduced equation from the determining equations.

    Args:
        equations: Output of expand for the same model, wavenumber and scales
        scales: Scales used in the expansion
        reduced_variable: n2 = n1 - m1 or n2 = n1 + m1

    Returns:
        ReducedEquation with source "engine"

    Raises:
        DegenerateException: the carrier misses the dispersion relation, a
            pivot vanishes or a structural identity fails
        InadmissibleException: the second-order equation is not annihilated
            by the scales
    """
    config = get_numerics_config()
    tol = config.engine_tol
    index = _index(equations)
    diagnostics: Dict[str, float] = {}

    with mpmath.workdps(config.mp_dps):
        reference = max(mpmath.mpf(1), mpmath.fsum(abs(to_mpc(c)) for c in model.linear_part.values()))

        lam = _equation(index, 1, 1).coefficient(psi(1, 0, 0, 0))
        diagnostics["dispersion_residual"] = float(abs(lam) / reference)
        if abs(lam) > tol * reference:
            raise DegenerateException("Carrier does not satisfy the dispersion relation", residual=float(abs(lam)))

        eq12 = _equation(index, 2, 1)
        first = eq12.substituted(reduced_variable)
        diagnostics["scale_residual"] = float(first.max_abs / reference)
        if first.max_abs > tol * max(reference, eq12.max_abs):
            raise InadmissibleException(
                "Second-order harmonic equation is not annihilated by the scales",
                deficit=first.max_abs, M1=str(scales.M1), M2=str(scales.M2),
            )

        eq22 = _equation(index, 2, 2).substituted(reduced_variable)
        pivot = eq22.coefficient(psi(2, 0, 0))
        if abs(pivot) <= tol * reference:
            raise DegenerateException("Second harmonic is resonant", cos_k=wavenumber.label)
        p1 = -eq22.coefficient(psi(1, 0, 0), psi(1, 0, 0)) / pivot

        psi0_order, q0 = _solve_mean_field(_equation(index, 2, 0).substituted(reduced_variable), reference, tol)

        eq13 = _equation(index, 3, 1).substituted(reduced_variable)
        b = eq13.coefficient(psi(1, 0, 1))
        if abs(b) <= tol * reference:
            raise DegenerateException("Slow-time coefficient vanishes", cos_k=wavenumber.label)
        c1 = eq13.coefficient(psi(1, 2, 0)) / b
        c2 = eq13.coefficient(psi(1, 1, 0)) / b
        diagnostics["dispersion_asymmetry"] = float(max(
            abs(eq13.coefficient(psi(1, -2, 0)) / b - c1),
            abs(eq13.coefficient(psi(1, -1, 0)) / b - c2),
        ))
        centre = eq13.coefficient(psi(1, 0, 0)) / b
        diagnostics["centre_residual"] = float(abs(centre + 1 + 2 * c1 + 2 * c2))
        if diagnostics["centre_residual"] > tol * max(1, abs(c1) + abs(c2)):
            raise DegenerateException("Third-order linear terms do not form second differences",
                                      residual=diagnostics["centre_residual"])

        cubic_key = monomial_key([psi(1, 0, 0), psi(1, 0, 0), psi(1, 0, 0, conjugated=True)])
        mean_key = monomial_key([psi(0, 0, 0), psi(1, 0, 0)])
        second_key = monomial_key([psi(2, 0, 0), psi(1, 0, 0, conjugated=True)])
        cubic_local = eq13.terms.get(cubic_key, mpmath.mpc(0)) / b
        nonlocal_coupling = eq13.terms.get(mean_key, mpmath.mpc(0)) / b
        harmonic2_coupling = eq13.terms.get(second_key, mpmath.mpc(0)) / b
        known = [monomial_key([psi(1, s, d)]) for s in range(-2, 3) for d in (0, 1)]
        stray = eq13.leftovers(known + [cubic_key, mean_key, second_key], tol * abs(b))
        if stray:
            logger.warning(f"Unclassified third-order terms: {stray}")

        cubic = cubic_local + harmonic2_coupling * p1
        p2 = None
        if psi0_order == 2:
            cubic += nonlocal_coupling * q0
        else:
            p2 = _solve_mean_field_relation(_equation(index, 3, 0).substituted(reduced_variable), reference, tol)

        values: Dict[str, Any] = {
            "c1": c1,
            "c2": c2,
            "cubic": cubic,
            "cubic_local": cubic_local,
            "harmonic2_coupling": harmonic2_coupling,
            "nonlocal_coupling": nonlocal_coupling if psi0_order == 3 else None,
            "p1": p1,
            "p2": p2,
        }
    if ledger:
        diagnostics["lowest_dropped_order"] = float(min(ledger))
    return build_reduced(
        model, wavenumber, scales,
        values,
        source="engine",
        diagnostics=diagnostics,
        reduced_variable=reduced_variable,
        psi0_order=psi0_order,
    )


def derive(model: LatticeModel, wavenumber: Any, scales: ScaleTriple,
           reduced_variable: Literal["difference", "sum"] = "difference",
           linearized: bool = False) -> ReducedEquation:
    """
    Expand and solve in one call.

    For the sum variable n2 = n1 + m1 the slow time runs with -M2, which
    needs a group velocity of -M2/M1.
    """
    wavenumber = as_wavenumber(wavenumber)
    if reduced_variable == "sum":
        scales = scales.model_copy(update={"M2": -scales.M2})
    ledger: Dict[int, int] = Counter()
    equations = expand(model, wavenumber, scales, linearized=linearized, ledger=ledger)
    reduced = solve_hierarchy(equations, scales, model, wavenumber, reduced_variable, ledger=ledger)
    logger.info(
        f"Derived {model.kind} at cos k = {wavenumber.label}: "
        f"C1={reduced.C1:.6g}, C2={reduced.C2:.6g}, C3={reduced.C3:.6g}"
    )
    return reduced
