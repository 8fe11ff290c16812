"""
Multiple-Scale Expansion
Substitutes the envelope ansatz into a lattice polynomial and collects
the determining equations by power of epsilon and harmonic.
"""
import logging
from collections import Counter, defaultdict
from functools import lru_cache
from typing import Any, Callable, Dict, Iterator, List, MutableMapping, Optional, Sequence, Tuple

import mpmath
import sympy

from core.exception import DegenerateException, DomainException
from core.numerics_config import get_numerics_config
from diffcalc import M1, M2, cross_shift_stencil
from models import LatticeModel, QuadModel
from reduction.scales import ScaleTriple
from reduction.wavenumber import Wavenumber
from utils.numbers import to_mpc, to_mpf

from .symbols import DeterminingEquation, EnvelopeSymbol, SeriesTerm, monomial_key

logger = logging.getLogger(__name__)

MAX_ORDER = 3

# (order, harmonic, conjugated) of the ansatz pieces
# v = eps (psi1 E + c.c.) + eps^2 (psi2 E^2 + c.c. + psi0)
_ANSATZ = (
    (1, 1, False),
    (1, -1, True),
    (2, 2, False),
    (2, -2, True),
    (2, 0, False),
)


@lru_cache(maxsize=64)
def _stencil_pieces(dn: int, dm: int) -> Tuple[Tuple[int, Tuple[int, int, int], Callable[..., Any]], ...]:
    """(power of epsilon, slow shift, coefficient(M1, M2)) for f[n+dn, m+dm]"""
    pieces = []
    for power, terms in sorted(cross_shift_stencil(dn=dn, dm=dm).order_terms().items()):
        for shift, expr in sorted(terms.items()):
            pieces.append((power, shift, sympy.lambdify((M1, M2), expr, modules="mpmath")))
    return tuple(pieces)


def linear_symbol(model: LatticeModel, z: Any, big_omega: Any) -> Any:
    """Lambda(z, Omega) at working precision"""
    return mpmath.fsum(to_mpc(c) * z ** dn * big_omega ** dm for (dn, dm), c in model.linear_part.items())


def carrier_factor(model: LatticeModel, wavenumber: Wavenumber) -> Any:
    """
    Omega on the dispersion branch at working precision.

    Quad models have Omega as a Mobius function of z; other models are
    refined from the float branch by a root search on Lambda(z, Omega).
    """
    z = wavenumber.mp_z()
    linear = {shift: to_mpc(c) for shift, c in model.linear_part.items()}
    if isinstance(model, QuadModel):
        denominator = linear.get((0, 1), 0) + linear.get((1, 1), 0) * z
        if denominator == 0:
            raise DegenerateException(f"{model.kind}: dispersion denominator vanishes", cos_k=wavenumber.label)
        return -(linear.get((0, 0), 0) + linear.get((1, 0), 0) * z) / denominator
    start = to_mpc(model.Omega_of(float(wavenumber.mp_k())))
    return mpmath.findroot(lambda w: linear_symbol(model, z, w), start)


def factor_series(dn: int, dm: int, z: Any, big_omega: Any, m1: Any, m2: Any,
                  max_order: int = MAX_ORDER,
                  ledger: Optional[MutableMapping[int, int]] = None) -> List[SeriesTerm]:
    """Ansatz for v[n+dn, m+dm] as series terms, sorted by order"""
    e = z ** dn * big_omega ** dm
    factors = {1: e, -1: mpmath.conj(e), 2: e * e, -2: mpmath.conj(e * e), 0: mpmath.mpc(1)}
    terms: List[SeriesTerm] = []
    for base_order, harmonic, conjugated in _ANSATZ:
        for power, shift, coefficient in _stencil_pieces(dn, dm):
            order = base_order + power
            if order > max_order:
                if ledger is not None:
                    ledger[order] += 1
                continue
            symbol = EnvelopeSymbol(harmonic=abs(harmonic), conjugated=conjugated, shift=shift)
            terms.append(SeriesTerm(
                eps_order=order,
                harmonic=harmonic,
                coefficient=factors[harmonic] * coefficient(m1, m2),
                monomial=(symbol,),
            ))
    terms.sort(key=lambda term: term.eps_order)
    return terms


def _products(series: Sequence[List[SeriesTerm]], budget: int,
              ledger: Optional[MutableMapping[int, int]]) -> Iterator[Tuple[SeriesTerm, ...]]:
    """Products of one term per factor with total order within budget"""
    if not series:
        yield ()
        return
    head, rest = series[0], series[1:]
    reserve = len(rest)
    for term in head:
        if term.eps_order + reserve > budget:
            if ledger is not None:
                ledger[term.eps_order + reserve] += 1
            continue
        for tail in _products(rest, budget - term.eps_order, ledger):
            yield (term,) + tail


def expand(model: LatticeModel, wavenumber: Wavenumber, scales: ScaleTriple,
           linearized: bool = False, max_order: int = MAX_ORDER,
           ledger: Optional[MutableMapping[int, int]] = None) -> List[DeterminingEquation]:
    """
    Collect the determining equations of a model up to max_order.

    Args:
        model: Lattice model
        wavenumber: Carrier wavenumber
        scales: Scales (M1, M2) of the slow variables
        linearized: Keep only the linear part of the polynomial
        max_order: Highest power of epsilon retained
        ledger: Receives {order: count} of every dropped contribution

    Returns:
        Equations sorted by (order, harmonic); harmonics -s are the
        conjugates of s and are kept for checks

    Raises:
        DomainException: a monomial has a shift of degree above 2
    """
    wavenumber.check_carrier()
    ledger = ledger if ledger is not None else Counter()
    config = get_numerics_config()
    collected: Dict[Tuple[int, int], Dict[Any, Any]] = defaultdict(dict)

    with mpmath.workdps(config.mp_dps):
        z = wavenumber.mp_z()
        big_omega = carrier_factor(model, wavenumber)
        m1, m2 = to_mpf(scales.M1), to_mpf(scales.M2)
        series = {
            (dn, dm): factor_series(dn, dm, z, big_omega, m1, m2, max_order, ledger)
            for dn, dm in model.shifts
        }

        for monomial, exact_coefficient in model.polynomial.terms.items():
            degree = len(monomial)
            if linearized and degree > 1:
                continue
            if degree > max_order:
                ledger[degree] += 1
                continue
            if max(Counter(monomial).values()) > 2:
                raise DomainException(
                    f"{model.kind}: a shift appears with degree above 2", monomial=monomial
                )
            coefficient = to_mpc(exact_coefficient)
            for product in _products([series[shift] for shift in monomial], max_order, ledger):
                order = sum(term.eps_order for term in product)
                harmonic = sum(term.harmonic for term in product)
                value = coefficient
                for term in product:
                    value *= term.coefficient
                key = monomial_key(term.monomial[0] for term in product)
                bucket = collected[(order, harmonic)]
                bucket[key] = bucket.get(key, mpmath.mpc(0)) + value

    equations = [
        DeterminingEquation(eps_order=order, harmonic=harmonic, terms=terms)
        for (order, harmonic), terms in sorted(collected.items())
    ]
    logger.debug(
        f"Expanded {model.kind} at cos k = {wavenumber.label}: {len(equations)} equations, "
        f"dropped {dict(sorted(ledger.items()))}"
    )
    return equations
