"""
Lattice Model Base
Shared machinery for the lattice equations: exact deviation polynomial,
linear dispersion, carrier waves and group velocities.
"""
import cmath
import logging
import math
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import cached_property
from typing import Any, ClassVar, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict, Field

from core.exception import DegenerateException, RealityException, SingularConfigurationException
from core.numerics_config import get_numerics_config
from utils.str import parse_rational

logger = logging.getLogger(__name__)

Shift = Tuple[int, int]
Monomial = Tuple[Shift, ...]


class CarrierWave(BaseModel):
    """Linear carrier E[n, m] = z^n Omega^m of a lattice model"""

    k: float = Field(..., description="Wavenumber")
    z: complex = Field(..., description="exp(i k)")
    omega: float = Field(..., description="Frequency")
    Omega: complex = Field(..., description="exp(-i omega)")
    group_velocity: float = Field(..., description="d omega / d k")

    model_config = ConfigDict(frozen=True)

    def phase(self, n: np.ndarray, m: np.ndarray) -> np.ndarray:
        """E[n, m] on index arrays"""
        return np.exp(1j * (self.k * np.asarray(n) - self.omega * np.asarray(m)))


class LatticePolynomial(BaseModel):
    """Deviation polynomial around the background, keyed by shift monomials"""

    terms: Dict[Monomial, Any] = Field(..., description="Monomial -> exact coefficient")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def degree(self, d: int) -> Dict[Monomial, Any]:
        return {mono: c for mono, c in self.terms.items() if len(mono) == d}

    @property
    def max_degree(self) -> int:
        return max((len(mono) for mono in self.terms), default=0)

    def linear(self) -> Dict[Shift, Any]:
        return {mono[0]: c for mono, c in self.degree(1).items()}

    def numeric(self) -> Dict[Monomial, complex]:
        return {mono: complex(c) for mono, c in self.terms.items()}

    def evaluate(self, v: Mapping[Shift, Any], max_degree: Optional[int] = None) -> Any:
        total = 0
        for mono, c in self.terms.items():
            if max_degree is not None and len(mono) > max_degree:
                continue
            term = float(c) if not isinstance(c, complex) else c
            for shift in mono:
                term = term * v[shift]
            total = total + term
        return total


def _v_symbol(shift: Shift) -> sympy.Symbol:
    dn, dm = shift
    return sympy.Symbol(f"v_{dn}_{dm}")


class LatticeModel(ABC):
    """
    A nonlinear lattice equation with its parameters.

    Subclasses define the equation as plain arithmetic on a shift -> value
    mapping; everything else (deviation polynomial, linear part,
    dispersion) is derived from it.
    """

    kind: ClassVar[str]
    background: ClassVar[int] = 0
    shifts: ClassVar[Tuple[Shift, ...]]
    param_names: ClassVar[Tuple[str, ...]]

    def __init__(self, **params: Any):
        missing = [name for name in self.param_names if name not in params]
        if missing:
            raise DegenerateException(f"Missing {self.kind} parameters", missing=missing)
        self.params: Dict[str, Fraction] = {
            name: parse_rational(params[name]) for name in self.param_names
        }
        self.validate()
        logger.debug(f"Created {self.kind} model with {self.describe_params()}")

    def validate(self) -> None:
        """Raise on parameters the model does not admit"""
        return None

    def describe_params(self) -> Dict[str, str]:
        return {name: str(value) for name, value in self.params.items()}

    def float_params(self) -> Dict[str, float]:
        return {name: float(value) for name, value in self.params.items()}

    def exact_params(self) -> Dict[str, sympy.Rational]:
        return {name: sympy.Rational(v.numerator, v.denominator) for name, v in self.params.items()}

    @abstractmethod
    def equation(self, u: Mapping[Shift, Any], params: Mapping[str, Any]) -> Any:
        """Defining equation, left minus right, in the original variables"""

    def residual(self, corner_values: Any) -> float:
        """
        Residual of the defining equation.

        Args:
            corner_values: Mapping shift -> value, or a sequence ordered as
                self.shifts

        Returns:
            Left-minus-right value, zero on solutions
        """
        return self.equation(self._as_mapping(corner_values), self.float_params())

    def _as_mapping(self, values: Any) -> Dict[Shift, Any]:
        if isinstance(values, Mapping):
            return {tuple(k): v for k, v in values.items()}
        values = list(values)
        if len(values) != len(self.shifts):
            raise DegenerateException(
                f"{self.kind} needs {len(self.shifts)} stencil values", got=len(values)
            )
        return dict(zip(self.shifts, values))

    @cached_property
    def polynomial(self) -> LatticePolynomial:
        """Equation expanded around the background, v = u - b"""
        symbols = {shift: _v_symbol(shift) for shift in self.shifts}
        u = {shift: self.background + symbols[shift] for shift in self.shifts}
        expr = sympy.expand(self.equation(u, self.exact_params()))
        ordered = [symbols[s] for s in self.shifts]
        poly = sympy.Poly(expr, *ordered)
        terms: Dict[Monomial, Any] = {}
        for exponents, coeff in poly.terms():
            mono: List[Shift] = []
            for shift, power in zip(self.shifts, exponents):
                mono.extend([shift] * power)
            if not mono:
                if coeff != 0:
                    raise DegenerateException(
                        f"Background {self.background} does not solve the {self.kind} equation"
                    )
                continue
            terms[tuple(sorted(mono))] = coeff
        return LatticePolynomial(terms=terms)

    @property
    def linear_part(self) -> Dict[Shift, Any]:
        return self.polynomial.linear()

    def linear_symbol(self, z: complex, big_omega: complex) -> complex:
        """Lambda(z, Omega) = sum of L_s z^dn Omega^dm"""
        return sum(complex(c) * z ** dn * big_omega ** dm for (dn, dm), c in self.linear_part.items())

    def linear_symbol_derivatives(self, z: complex, big_omega: complex) -> Tuple[complex, complex]:
        """(z Lambda_z, Omega Lambda_Omega)"""
        z_part = sum(complex(c) * dn * z ** dn * big_omega ** dm for (dn, dm), c in self.linear_part.items())
        o_part = sum(complex(c) * dm * z ** dn * big_omega ** dm for (dn, dm), c in self.linear_part.items())
        return z_part, o_part

    @abstractmethod
    def Omega_of(self, k: float) -> complex:
        """Carrier factor Omega on the dispersion branch"""

    @abstractmethod
    def group_velocity(self, k: float) -> float:
        """Closed-form group velocity"""

    def check_reality(self, k: float) -> None:
        """Raise RealityException when the dispersion is not real at k"""
        return None

    def generic_group_velocity(self, k: float) -> float:
        """z Lambda_z / (Omega Lambda_Omega) on the dispersion branch"""
        z = cmath.exp(1j * k)
        z_part, o_part = self.linear_symbol_derivatives(z, self.Omega_of(k))
        if abs(o_part) == 0:
            raise DegenerateException(f"{self.kind}: Omega Lambda_Omega vanishes", k=k)
        return (z_part / o_part).real

    def dispersion(self, k: float) -> CarrierWave:
        """
        Carrier wave at wavenumber k.

        Args:
            k: Wavenumber

        Returns:
            CarrierWave with principal frequency

        Raises:
            RealityException: the model's reality condition fails at k
        """
        config = get_numerics_config()
        self.check_reality(k)
        big_omega = self.Omega_of(k)
        if abs(abs(big_omega) - 1.0) > max(config.unit_modulus_tol, 64 * np.finfo(float).eps):
            raise RealityException(
                f"{self.kind}: |Omega| differs from 1",
                k=k, modulus=abs(big_omega),
            )
        omega = -cmath.phase(big_omega)
        return CarrierWave(
            k=k,
            z=cmath.exp(1j * k),
            omega=omega,
            Omega=big_omega,
            group_velocity=self.group_velocity(k),
        )

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.describe_params().items())
        return f"{type(self).__name__}({args})"


class QuadModel(LatticeModel):
    """Equations on the four corners of an elementary square, affine in each corner"""

    shifts: ClassVar[Tuple[Shift, ...]] = ((0, 0), (1, 0), (0, 1), (1, 1))

    def Omega_of(self, k: float) -> complex:
        linear = {s: complex(c) for s, c in self.linear_part.items()}
        z = cmath.exp(1j * k)
        numerator = linear.get((0, 0), 0) + linear.get((1, 0), 0) * z
        denominator = linear.get((0, 1), 0) + linear.get((1, 1), 0) * z
        if denominator == 0:
            raise DegenerateException(f"{self.kind}: dispersion denominator vanishes", k=k)
        return -numerator / denominator

    def pq(self) -> Optional[Tuple[Fraction, Fraction]]:
        """(P, Q) with Omega = (P - Q z)/(P z - Q), when the model has that form"""
        return None

    def group_velocity(self, k: float) -> float:
        pq = self.pq()
        if pq is None:
            return self.generic_group_velocity(k)
        p, q = (float(v) for v in pq)
        denominator = p * p + q * q - 2 * p * q * math.cos(k)
        if denominator == 0:
            raise DegenerateException(f"{self.kind}: group velocity undefined", k=k)
        return (p * p - q * q) / denominator

    def solve_corner(self, values: Mapping[Shift, float], missing: Shift, delta_sing: Optional[float] = None,
                     site: Optional[Tuple[int, int]] = None) -> float:
        """
        Solve the equation for one corner given the other three.

        The equation is affine in every corner, so R(x) = R(0) + a x with
        a = R(1) - R(0).
        """
        if delta_sing is None:
            delta_sing = get_numerics_config().delta_sing
        params = self.float_params()
        trial = dict(values)
        trial[missing] = 0.0
        r0 = self.equation(trial, params)
        trial[missing] = 1.0
        slope = self.equation(trial, params) - r0
        scale = max([1.0] + [abs(v) for s, v in values.items() if s != missing])
        if abs(slope) < delta_sing * scale:
            raise SingularConfigurationException(
                f"{self.kind}: singular quad solve",
                site=site, denominator=slope,
            )
        return -r0 / slope


def step_quad(model: QuadModel, u: float, u10: float, third: float, direction: str = "up_right",
              site: Optional[Tuple[int, int]] = None) -> float:
    """
    Explicit quad step.

    Args:
        model: Quad model
        u: Value at (n, m)
        u10: Value at (n+1, m)
        third: u01 when marching up-right, u11 when marching up-left
        direction: "up_right" returns u11, "up_left" returns u01
        site: Lattice site reported on singular solves

    Returns:
        The missing corner
    """
    if direction == "up_right":
        return model.solve_corner({(0, 0): u, (1, 0): u10, (0, 1): third}, (1, 1), site=site)
    if direction == "up_left":
        return model.solve_corner({(0, 0): u, (1, 0): u10, (1, 1): third}, (0, 1), site=site)
    raise DegenerateException(f"Unknown quad direction: {direction}")


def finite_difference_group_velocity(model: LatticeModel, k: float, h: float = 1e-5) -> float:
    """Central difference of the principal frequency, immune to 2 pi jumps"""
    plus = model.Omega_of(k + h)
    minus = model.Omega_of(k - h)
    return -cmath.phase(plus / minus) / (2 * h)


def dispersion_sweep(model: LatticeModel, ks: Iterable[float]) -> List[Dict[str, Any]]:
    """
    Dispersion over a k-grid with omega unwrapped along the grid.

    Reality violations are reported per row instead of raised.
    """
    rows: List[Dict[str, Any]] = []
    for k in ks:
        try:
            carrier = model.dispersion(float(k))
            rows.append({
                "k": carrier.k,
                "omega": carrier.omega,
                "group_velocity": carrier.group_velocity,
                "omega_modulus": abs(carrier.Omega),
                "reality": "ok",
            })
        except (RealityException, DegenerateException) as exc:
            logger.warning(f"{model.kind}: no real dispersion at k={float(k):.6g}: {exc}")
            rows.append({
                "k": float(k),
                "omega": float("nan"),
                "group_velocity": float("nan"),
                "omega_modulus": float("nan"),
                "reality": "violated",
            })

    valid = [i for i, row in enumerate(rows) if row["reality"] == "ok"]
    if valid:
        unwrapped = np.unwrap([rows[i]["omega"] for i in valid])
        for i, omega in zip(valid, unwrapped):
            rows[i]["omega"] = float(omega)
    return rows


def plane_wave_residual(model: LatticeModel, carrier: CarrierWave, amplitude: float = 1.0,
                        n: int = 0, m: int = 0, linear_only: bool = True) -> complex:
    """Residual of b + amplitude E on the linear part (or the full deviation polynomial)"""
    v = {(dn, dm): amplitude * carrier.z ** (n + dn) * carrier.Omega ** (m + dm) for dn, dm in model.shifts}
    numeric = {mono: complex(c) for mono, c in model.polynomial.terms.items()}
    total = 0j
    for mono, c in numeric.items():
        if linear_only and len(mono) != 1:
            continue
        term = c
        for shift in mono:
            term *= v[shift]
        total += term
    return total


__all__ = [
    "Shift",
    "Monomial",
    "CarrierWave",
    "LatticePolynomial",
    "LatticeModel",
    "QuadModel",
    "step_quad",
    "finite_difference_group_velocity",
    "dispersion_sweep",
    "plane_wave_residual",
]
