"""
Engine Symbols
Envelope symbols, series terms and the determining equations they form
"""
from typing import Any, Dict, Iterable, List, Literal, Tuple

import mpmath
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.exception import DomainException


class EnvelopeSymbol(BaseModel):
    """psi^(s) (or its conjugate) at a slow-lattice shift"""

    harmonic: int = Field(..., ge=0, le=2, description="s")
    conjugated: bool = Field(default=False)
    shift: Tuple[int, ...] = Field(..., description="(n1, m1, m2) shift, or (n2, m2) after substitution")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _conjugate_needs_harmonic(self) -> "EnvelopeSymbol":
        if self.conjugated and self.harmonic == 0:
            raise DomainException("The mean field psi0 is real and has no conjugate")
        return self

    @property
    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return self.harmonic, int(self.conjugated), self.shift

    def substituted(self, reduced_variable: Literal["difference", "sum"] = "difference") -> "EnvelopeSymbol":
        """(a, b, c) -> (a - b, c), or (a + b, c) for n2 = n1 + m1"""
        if len(self.shift) != 3:
            return self
        a, b, c = self.shift
        n2 = a - b if reduced_variable == "difference" else a + b
        return EnvelopeSymbol(harmonic=self.harmonic, conjugated=self.conjugated, shift=(n2, c))

    def __str__(self) -> str:
        star = "*" if self.conjugated else ""
        return f"psi{self.harmonic}{star}[{','.join(str(s) for s in self.shift)}]"


Monomial = Tuple[EnvelopeSymbol, ...]


def monomial_key(symbols: Iterable[EnvelopeSymbol]) -> Monomial:
    return tuple(sorted(symbols, key=lambda symbol: symbol.sort_key))


def psi(harmonic: int, *shift: int, conjugated: bool = False) -> EnvelopeSymbol:
    return EnvelopeSymbol(harmonic=harmonic, conjugated=conjugated, shift=tuple(shift))


class SeriesTerm(BaseModel):
    """coefficient * E^harmonic * epsilon^eps_order * product of symbols"""

    eps_order: int
    harmonic: int
    coefficient: Any = Field(..., description="mpmath complex")
    monomial: Monomial

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class DeterminingEquation(BaseModel):
    """Everything multiplying epsilon^eps_order E^harmonic"""

    eps_order: int
    harmonic: int
    terms: Dict[Monomial, Any] = Field(default_factory=dict, description="Monomial -> mpmath complex")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def coefficient(self, *symbols: EnvelopeSymbol) -> Any:
        return self.terms.get(monomial_key(symbols), mpmath.mpc(0))

    @property
    def max_abs(self) -> float:
        return max((float(abs(c)) for c in self.terms.values()), default=0.0)

    def is_annihilated(self, tol: float) -> bool:
        return self.max_abs <= tol

    def substituted(self, reduced_variable: Literal["difference", "sum"] = "difference") -> "DeterminingEquation":
        """Same equation over (n2, m2)"""
        merged: Dict[Monomial, Any] = {}
        for monomial, coeff in self.terms.items():
            key = monomial_key(symbol.substituted(reduced_variable) for symbol in monomial)
            merged[key] = merged.get(key, mpmath.mpc(0)) + coeff
        return DeterminingEquation(eps_order=self.eps_order, harmonic=self.harmonic, terms=merged)

    def involves_harmonic(self, harmonic: int) -> bool:
        return any(symbol.harmonic == harmonic for monomial in self.terms for symbol in monomial)

    def leftovers(self, known: Iterable[Monomial], tol: float) -> List[str]:
        known = set(known)
        return [
            " ".join(str(s) for s in monomial)
            for monomial, coeff in self.terms.items()
            if monomial not in known and abs(coeff) > tol
        ]

    def __str__(self) -> str:
        return f"(order {self.eps_order}, harmonic {self.harmonic}): {len(self.terms)} terms"
