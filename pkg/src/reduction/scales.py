"""
Scales and Admissibility
Integer scale factors M1, M2, the complex constant S, and the regions of
M2/M1 reachable by each model
"""
import cmath
import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Literal, Optional, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, Field

from core.exception import (
    DegenerateException,
    DomainException,
    InadmissibleException,
    RealityException,
)
from core.numerics_config import get_numerics_config
from models import LatticeModel, NiKdVModel, QuadModel
from reduction.wavenumber import Wavenumber, as_wavenumber
from utils.numbers import to_complex, to_mpf, to_sympy
from utils.str import format_rational, parse_rational

logger = logging.getLogger(__name__)


class PQPair(BaseModel):
    """Omega = (P - Q z)/(P z - Q)"""

    P: Any = Field(..., description="Exact P")
    Q: Any = Field(..., description="Exact Q")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def is_degenerate(self) -> bool:
        return self.P * self.P == self.Q * self.Q

    @property
    def ratio(self) -> Optional[Fraction]:
        return None if self.Q == 0 else Fraction(self.P) / Fraction(self.Q)

    def omega_exact(self, z: sympy.Expr) -> sympy.Expr:
        P, Q = to_sympy(self.P), to_sympy(self.Q)
        return (P - Q * z) / (P * z - Q)

    def m1_ratio(self, cos_k: Fraction) -> Fraction:
        """M1 / M2 = (P^2 + Q^2 - 2 P Q cos k)/(P^2 - Q^2)"""
        if self.is_degenerate:
            raise DegenerateException("P^2 = Q^2 leaves M1/M2 undefined", P=str(self.P), Q=str(self.Q))
        P, Q = Fraction(self.P), Fraction(self.Q)
        return (P * P + Q * Q - 2 * P * Q * cos_k) / (P * P - Q * Q)

    def group_velocity(self, cos_k: Fraction) -> Fraction:
        return 1 / self.m1_ratio(cos_k)


class ScaleTriple(BaseModel):
    """
    Scale factors of the slow variables n1 = M1 n / N, m1 = M2 m / N,
    m2 = m / N^2, and the complex constant S tying them to the carrier.
    """

    M1: Any = Field(..., description="Scale on n1; int when admissible")
    M2: Any = Field(..., description="Scale on m1")
    S: complex = Field(..., description="Complex constant rho exp(i theta)")
    branch: int = Field(default=0, description="l in theta + l pi; 0 when M1 > 0 on the default branch")
    wavenumber: Wavenumber = Field(..., description="Carrier wavenumber the scales belong to")
    N: Optional[int] = Field(default=None, description="Lattice ratio 1/epsilon when fixed")
    integer: bool = Field(default=True, description="Both M1 and M2 are integers")
    mode: Literal["admissible", "derivation", "fixed_S"] = Field(default="admissible")
    S_exact: Optional[Any] = Field(default=None, description="Exact S when available")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def rho(self) -> float:
        return abs(self.S)

    @property
    def theta(self) -> float:
        return cmath.phase(self.S)

    @property
    def branch_sign(self) -> int:
        return -1 if self.branch % 2 else 1

    @property
    def group_velocity(self) -> Any:
        """M2 / M1, exact when both are rational"""
        if isinstance(self.M1, (int, Fraction)) and isinstance(self.M2, (int, Fraction)):
            return Fraction(self.M2) / Fraction(self.M1)
        return float(to_mpf(self.M2) / to_mpf(self.M1))

    def m1_float(self) -> float:
        return float(to_mpf(self.M1))

    def m2_float(self) -> float:
        return float(to_mpf(self.M2))

    def divides(self, n: int) -> bool:
        if not self.integer:
            return False
        return all(m != 0 and n % abs(int(m)) == 0 for m in (self.M1, self.M2))

    def require_divisibility(self, n: int) -> None:
        if not self.divides(n):
            raise DomainException(
                "M1 and M2 must divide N for integer slow lattices",
                M1=str(self.M1), M2=str(self.M2), N=n,
            )

    def with_N(self, n: int) -> "ScaleTriple":
        self.require_divisibility(n)
        return self.model_copy(update={"N": n})

    def flipped(self) -> "ScaleTriple":
        """Opposite branch; M1 and M2 change sign together"""
        update: Dict[str, Any] = {
            "M1": -self.M1,
            "M2": -self.M2,
            "S": -self.S,
            "branch": 1 - self.branch % 2,
        }
        if self.S_exact is not None:
            update["S_exact"] = -self.S_exact
        return self.model_copy(update=update)

    def slow_coordinates(self, n: Any, m: Any, epsilon: float, reduced_variable: str = "difference") -> Tuple[Any, Any]:
        """(n2, m2) of fine sites; n2 = n1 - m1 (or n1 + m1)"""
        m1, m2 = self.m1_float(), self.m2_float()
        sign = -1 if reduced_variable == "difference" else 1
        return epsilon * (m1 * n + sign * m2 * m), epsilon * epsilon * m

    def describe(self) -> Dict[str, str]:
        return {
            "M1": str(self.M1),
            "M2": str(self.M2),
            "S": f"{self.S.real:.12g}{self.S.imag:+.12g}j",
            "branch": str(self.branch),
            "mode": self.mode,
        }


def pq_of(model: LatticeModel) -> PQPair:
    """
    (P, Q) of a model whose dispersion has the Moebius form.

    Raises:
        DomainException: nikdv, which is not of that form
        RealityException: Hietarinta with o2 off the reality condition
    """
    if isinstance(model, NiKdVModel) or not isinstance(model, QuadModel):
        raise DomainException(f"{model.kind} dispersion is not of PQ form")
    pair = model.pq()
    if pair is None:
        raise RealityException(f"{model.kind}: dispersion is not real, no PQ form", **model.describe_params())
    return PQPair(P=pair[0], Q=pair[1])


def _check_m2(M2: Any, derivation_only: bool) -> Any:
    value = parse_rational(M2)
    if value == 0:
        raise DomainException("M2 must be nonzero")
    if value.denominator != 1:
        if not derivation_only:
            raise DomainException("M2 must be an integer", M2=format_rational(value))
        return value
    return int(value)


def _exact_number(value: Fraction) -> Any:
    return int(value) if value.denominator == 1 else value


def _check_construction(triple: ScaleTriple, m1_formula: complex, m2_formula: complex) -> None:
    """Im parts vanish and Re parts reproduce M1, M2 at the constructed S"""
    tol = get_numerics_config().scale_tol
    for name, formula, target in (("M1", m1_formula, triple.m1_float()), ("M2", m2_formula, triple.m2_float())):
        scale = max(1.0, abs(target))
        if abs(formula.imag) > tol * scale or abs(formula.real - target) > tol * scale:
            raise DegenerateException(
                f"S does not reproduce a real {name}",
                formula=f"{formula:.15g}", target=target,
            )


def _pq_scales(model: QuadModel, wavenumber: Wavenumber, M2: Any, derivation_only: bool) -> ScaleTriple:
    pq = pq_of(model)
    if pq.is_degenerate:
        raise DegenerateException(f"{model.kind}: P^2 = Q^2", P=str(pq.P), Q=str(pq.Q))

    M1 = Fraction(M2) * pq.m1_ratio(wavenumber.cos_k)
    if M1.denominator != 1 and not derivation_only:
        deficit = M1 - round(M1)
        raise InadmissibleException(
            f"{model.kind}: M1 is not an integer at cos k = {wavenumber.label}, M2 = {M2}",
            deficit=deficit, M1=format_rational(M1),
        )

    P, Q = to_sympy(pq.P), to_sympy(pq.Q)
    z = wavenumber.exact_z
    S_exact = to_sympy(Fraction(M2)) * (P * z - Q) / (z * (P * P - Q * Q))
    S = to_complex(S_exact)
    branch = 0 if M1 > 0 else 1
    triple = ScaleTriple(
        M1=_exact_number(M1),
        M2=M2,
        S=S,
        branch=branch,
        wavenumber=wavenumber,
        integer=M1.denominator == 1 and isinstance(M2, int),
        mode="admissible" if M1.denominator == 1 else "derivation",
        S_exact=S_exact,
    )

    zc = complex(math.cos(wavenumber.k), math.sin(wavenumber.k))
    big_omega = (float(pq.P) - float(pq.Q) * zc) / (float(pq.P) * zc - float(pq.Q))
    _check_construction(
        triple,
        S * (float(pq.P) - float(pq.Q) * zc),
        S * zc * (big_omega * float(pq.P) + float(pq.Q)),
    )
    if triple.group_velocity != pq.group_velocity(wavenumber.cos_k):
        raise DegenerateException("M2/M1 differs from the group velocity")
    return triple


def _nikdv_scales(model: NiKdVModel, wavenumber: Wavenumber, M2: Any, derivation_only: bool) -> ScaleTriple:
    alpha = to_sympy(model.params["alpha"])
    c = wavenumber.exact_cos
    s2 = to_sympy(wavenumber.sin_squared)
    radicand = 1 - alpha**2 * s2**3
    if radicand < 0:
        raise RealityException("nikdv: |alpha sin^3 k| exceeds 1", cos_k=wavenumber.label)
    if radicand == 0:
        raise DegenerateException("nikdv: cos omega vanishes", cos_k=wavenumber.label)
    cos_omega = sympy.sqrt(radicand)
    if alpha * c * s2 == 0:
        raise DegenerateException("nikdv: zero group velocity needs M2 = 0", cos_k=wavenumber.label)

    # S real; M2 = -6 S alpha cos k sin^2 k and M1 = -2 S cos omega
    S_exact = -to_sympy(Fraction(M2)) / (6 * alpha * c * s2)
    M1_exact = sympy.nsimplify(-2 * S_exact * cos_omega)
    if M1_exact.is_Rational:
        M1: Any = Fraction(int(M1_exact.p), int(M1_exact.q))
        if M1.denominator != 1 and not derivation_only:
            raise InadmissibleException(
                f"nikdv: M1 is not an integer at cos k = {wavenumber.label}, M2 = {M2}",
                deficit=M1 - round(M1), M1=format_rational(M1),
            )
        M1 = _exact_number(M1)
        integer = isinstance(M1, int) and isinstance(M2, int)
    else:
        if not derivation_only:
            raise InadmissibleException(
                f"nikdv: irrational group velocity at cos k = {wavenumber.label}",
                M1=str(M1_exact),
            )
        M1 = M1_exact
        integer = False

    return ScaleTriple(
        M1=M1,
        M2=M2,
        S=complex(to_complex(S_exact).real, 0.0),
        branch=0 if to_mpf(M1) > 0 else 1,
        wavenumber=wavenumber,
        integer=integer,
        mode="admissible" if integer else "derivation",
        S_exact=S_exact,
    )


def solve_scales(model: LatticeModel, wavenumber: Any, M2: Any, branch: Optional[int] = None,
                 sin_sign: int = 1, derivation_only: bool = False) -> ScaleTriple:
    """
    Scale triple of an admissible carrier.

    Args:
        model: Lattice model
        wavenumber: Wavenumber, or a rational cos k
        M2: Integer scale on m1 (rational in derivation mode)
        branch: 0 or 1; the branch opposite to M2's sign flips (M1, M2)
        sin_sign: Sign of sin k when a bare cos k is given
        derivation_only: Accept non-integer M1 (coefficients only, no lattice)

    Returns:
        ScaleTriple with M2/M1 equal to the group velocity

    Raises:
        InadmissibleException: M1 is not an integer
        DegenerateException: P^2 = Q^2, k = 0 or pi, zero group velocity
    """
    wavenumber = as_wavenumber(wavenumber, sin_sign)
    wavenumber.check_carrier()
    M2 = _check_m2(M2, derivation_only)

    if isinstance(model, NiKdVModel):
        triple = _nikdv_scales(model, wavenumber, M2, derivation_only)
    else:
        triple = _pq_scales(model, wavenumber, M2, derivation_only)

    if branch is not None and branch % 2 != triple.branch:
        triple = triple.flipped()
    logger.debug(
        f"{model.kind} scales at cos k = {wavenumber.label}: M1={triple.M1}, M2={triple.M2}, "
        f"|S|={triple.rho:.6g}, branch={triple.branch}"
    )
    return triple


def scales_from_S(model: LatticeModel, wavenumber: Any, S: complex, sin_sign: int = 1) -> ScaleTriple:
    """
    Scales generated by a chosen S, without integrality.

    Used where the PQ construction breaks down, e.g. vkvm at alpha = 1/2
    where Omega = -1 and M2 = S z (Omega P + Q) = 0.
    """
    wavenumber = as_wavenumber(wavenumber, sin_sign)
    wavenumber.check_carrier()
    pq = pq_of(model)
    P, Q = float(pq.P), float(pq.Q)
    z = complex(math.cos(wavenumber.k), math.sin(wavenumber.k))
    big_omega = model.Omega_of(wavenumber.k)
    m1 = S * (P - Q * z)
    m2 = S * z * (big_omega * P + Q)
    tol = get_numerics_config().scale_tol
    if abs(m1.imag) > tol * max(1.0, abs(m1)) or abs(m2.imag) > tol * max(1.0, abs(m2)):
        raise DegenerateException("S gives complex scale factors", M1=f"{m1:.12g}", M2=f"{m2:.12g}")
    return ScaleTriple(
        M1=m1.real,
        M2=m2.real,
        S=S,
        branch=0 if m1.real > 0 else 1,
        wavenumber=wavenumber,
        integer=False,
        mode="fixed_S",
    )


def allowed_region(r: Any) -> Tuple[Fraction, Fraction]:
    """
    Closed interval swept by M2/M1 = (r^2 - 1)/(r^2 + 1 - 2 r cos k).

    Args:
        r: P/Q

    Returns:
        (lower, upper), the endpoints (r-1)/(r+1) and (r+1)/(r-1) in order
    """
    r = parse_rational(r)
    if r in (1, -1):
        raise DegenerateException("P^2 = Q^2 has no allowed region", r=format_rational(r))
    if r == 0:
        raise DegenerateException("P = 0 collapses the region to [-1, -1]", r="0")
    ends = sorted(((r - 1) / (r + 1), (r + 1) / (r - 1)))
    return ends[0], ends[1]


def region_case(r: Fraction) -> str:
    if r > 1:
        return "(1,inf)"
    if r > 0:
        return "(0,1)"
    if r > -1:
        return "(-1,0)"
    return "(-inf,-1)"


def region_table(r_values: Iterable[Any]) -> List[Dict[str, Any]]:
    """Region boundaries over an r grid; degenerate r are skipped"""
    rows: List[Dict[str, Any]] = []
    for value in r_values:
        r = parse_rational(value)
        try:
            lower, upper = allowed_region(r)
        except DegenerateException as exc:
            logger.debug(f"Skipping r = {format_rational(r)}: {exc}")
            continue
        rows.append({"r": r, "lower": lower, "upper": upper, "case": region_case(r)})
    return rows


class AdmissibleEntry(BaseModel):
    """One admissible (cos k, M1, M2)"""

    cos_k: Any = Field(..., description="Rational cos k")
    M1: int
    M2: int
    in_region: Optional[bool] = Field(default=None, description="M2/M1 inside the allowed region, when defined")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.M2, self.M1)

    def as_tuple(self) -> Tuple[Fraction, int, int]:
        return self.cos_k, self.M1, self.M2


def _cos_grid(denominator_max: int) -> List[Fraction]:
    values = {Fraction(r, s) for s in range(1, denominator_max + 1) for r in range(-s + 1, s)}
    return sorted(values)


def enumerate_admissible(model: LatticeModel, M2_max: int, cosk_denominator_max: int,
                         sin_sign: int = 1) -> List[AdmissibleEntry]:
    """
    All admissible (cos k, M1, M2) with |M2| <= M2_max and cos k = r/s, s bounded.

    Args:
        model: Lattice model
        M2_max: Bound on |M2|
        cosk_denominator_max: Bound on the denominator of cos k
        sin_sign: Sign of sin k

    Returns:
        Entries sorted by (cos k, M2); empty when nothing is admissible
    """
    if M2_max < 1 or cosk_denominator_max < 1:
        return []

    region: Optional[Tuple[Fraction, Fraction]] = None
    pq: Optional[PQPair] = None
    if not isinstance(model, NiKdVModel):
        pq = pq_of(model)
        if pq.is_degenerate:
            logger.info(f"{model.kind}: P^2 = Q^2, no admissible scales")
            return []
        if pq.ratio is not None and pq.ratio != 0:
            region = allowed_region(pq.ratio)

    entries: List[AdmissibleEntry] = []
    for cos_k in _cos_grid(cosk_denominator_max):
        wavenumber = Wavenumber(cos_k=cos_k, sin_sign=sin_sign)
        for M2 in range(-M2_max, M2_max + 1):
            if M2 == 0:
                continue
            if pq is not None and (M2 * pq.m1_ratio(cos_k)).denominator != 1:
                continue
            try:
                triple = solve_scales(model, wavenumber, M2)
            except (InadmissibleException, DegenerateException):
                continue
            ratio = Fraction(triple.M2, triple.M1)
            in_region = None if region is None else region[0] <= ratio <= region[1]
            if in_region is False:
                logger.error(f"{model.kind}: M2/M1 = {ratio} outside the allowed region {region}")
            entries.append(AdmissibleEntry(cos_k=cos_k, M1=triple.M1, M2=triple.M2, in_region=in_region))

    logger.info(f"{model.kind}: {len(entries)} admissible entries (|M2| <= {M2_max}, denominator <= {cosk_denominator_max})")
    return entries
