"""
Expansion Stencils
Fine-lattice shifts of a slowly varying function expressed through
shifted samples on the slow lattices
"""
import logging
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union

import sympy
from pydantic import BaseModel, ConfigDict, Field

from core.exception import DomainException, StencilOrderException
from diffcalc.slow import SlowFunctionSample

logger = logging.getLogger(__name__)

# Symbolic lattice parameters
N, M1, M2 = sympy.symbols("N M1 M2")
EPS = sympy.Symbol("epsilon")

Shift = Tuple[int, ...]
IntOrExpr = Union[int, sympy.Expr]


class ExpansionStencil(BaseModel):
    """
    Linear combination of shifted slow-lattice samples reproducing a
    fine-lattice shift of a slowly varying function.
    """

    target: str = Field(..., description="Fine-lattice shift expressed, e.g. f[n+1,m+1]")
    axes: Tuple[str, ...] = Field(..., description="Slow variables indexed by each shift entry")
    slow_orders: Tuple[int, ...] = Field(..., description="Declared slow order per axis")
    truncation_order: int = Field(..., description="Power of 1/N at which terms are dropped")
    terms: Dict[Shift, Any] = Field(..., description="Slow shift -> coefficient in N, M1, M2")
    displacement: Tuple[Any, ...] = Field(..., description="Slow-coordinate displacement of the target")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def order_terms(self) -> Dict[int, Dict[Shift, sympy.Expr]]:
        """Coefficients grouped by power of 1/N"""
        grouped: Dict[int, Dict[Shift, sympy.Expr]] = {}
        for shift, coeff in self.terms.items():
            series = sympy.Poly(sympy.expand(sympy.sympify(coeff).subs(N, 1 / EPS)), EPS)
            for (power,), part in series.terms():
                if part != 0:
                    grouped.setdefault(power, {})[shift] = part
        return dict(sorted(grouped.items()))

    def evaluate(self, **values: Any) -> Dict[Shift, sympy.Expr]:
        """Coefficients with N, M1, M2 (or M) substituted"""
        subs = {sympy.Symbol(name): sympy.nsimplify(value) if isinstance(value, float) else value for name, value in values.items()}
        return {shift: sympy.simplify(sympy.sympify(coeff).subs(subs)) for shift, coeff in self.terms.items()}

    def to_dict(self) -> Dict[str, Any]:
        """Structured form: shift multi-index -> numerator/denominator pair"""
        rows = []
        for shift, coeff in sorted(self.terms.items()):
            numerator, denominator = sympy.fraction(sympy.factor(sympy.together(sympy.sympify(coeff))))
            rows.append({
                "shift": list(shift),
                "coefficient": [str(sympy.expand(numerator)), str(sympy.expand(denominator))],
            })
        return {
            "target": self.target,
            "axes": list(self.axes),
            "slow_orders": list(self.slow_orders),
            "truncation_order": self.truncation_order,
            "terms": rows,
        }

    def apply(self, g: Callable[..., Any], at: Sequence[Any], **values: Any) -> sympy.Expr:
        """
        Stencil prediction for g at the displaced point.

        Args:
            g: Function of the slow coordinates
            at: Base point in slow coordinates
            **values: Numeric N, M1, M2 used by the coefficients

        Returns:
            Sum of coefficient * g(at + shift)
        """
        coeffs = self.evaluate(**values)
        total = sympy.Integer(0)
        for shift, coeff in coeffs.items():
            point = [sympy.sympify(a) + s for a, s in zip(at, shift)]
            total += coeff * g(*point)
        return sympy.simplify(total)

    def target_point(self, at: Sequence[Any], **values: Any) -> Tuple[sympy.Expr, ...]:
        """Slow coordinates of the fine-lattice target"""
        subs = {sympy.Symbol(name): value for name, value in values.items()}
        return tuple(sympy.sympify(a) + sympy.sympify(d).subs(subs) for a, d in zip(at, self.displacement))

    def apply_samples(self, sample: SlowFunctionSample, index: int, **values: Any) -> sympy.Expr:
        """Apply a one-axis stencil at a site of a sample"""
        if len(self.axes) != 1:
            raise DomainException("Sample application needs a one-axis stencil", axes=self.axes)
        if sample.declared_order is not None and sample.declared_order > self.slow_orders[0]:
            raise StencilOrderException(
                "Sample order exceeds the stencil order",
                declared_order=sample.declared_order,
                stencil_order=self.slow_orders[0],
            )
        coeffs = self.evaluate(**values)
        total = sympy.Integer(0)
        for (shift,), coeff in coeffs.items():
            site = index + shift
            if not 0 <= site < len(sample.values):
                raise DomainException("Stencil reaches outside the sample", site=site)
            total += coeff * sympy.nsimplify(sample.values[site])
        return sympy.simplify(total)


def _add(terms: Dict[Shift, sympy.Expr], shift: Shift, coeff: sympy.Expr) -> None:
    terms[shift] = terms.get(shift, sympy.Integer(0)) + coeff


def _clean(terms: Dict[Shift, sympy.Expr]) -> Dict[Shift, sympy.Expr]:
    cleaned = {shift: sympy.expand(c) for shift, c in terms.items()}
    return {shift: c for shift, c in cleaned.items() if c != 0}


def _check_divides(name: str, divisor: IntOrExpr, n: IntOrExpr) -> None:
    if isinstance(divisor, int) and isinstance(n, int):
        if divisor == 0 or n % divisor != 0:
            raise DomainException(f"{name} must divide the lattice ratio", divisor=divisor, N=n)


def _check_n(n: IntOrExpr) -> None:
    if isinstance(n, int) and n < 2:
        raise DomainException("Lattice ratio N must be at least 2", N=n)


def one_scale_stencil(p: int, n: IntOrExpr = N, m: IntOrExpr = 1, symmetric: bool = False) -> ExpansionStencil:
    """
    f[n+1] through g on the slow lattice n1 = M n / N.

    The asymmetric form is the Newton forward series with step M/N cut
    at order p; the symmetric form exists for p = 2 only.

    Args:
        p: Slow order, 1, 2 or 3
        n: Lattice ratio N (integer or symbol)
        m: Scale factor M, dividing N
        symmetric: Centered instead of forward differences

    Returns:
        ExpansionStencil over shifts (j,)
    """
    if p not in (1, 2, 3):
        raise DomainException("One-scale stencils exist for p in {1, 2, 3}", p=p)
    if symmetric and p % 2 == 1:
        raise DomainException("Odd-order expansions have no symmetric form", p=p)
    _check_n(n)
    _check_divides("M", m, n)

    h = sympy.sympify(m) / sympy.sympify(n)
    terms: Dict[Shift, sympy.Expr] = {}

    if symmetric:
        _add(terms, (0,), 1 - h**2)
        _add(terms, (1,), h / 2 + h**2 / 2)
        _add(terms, (-1,), -h / 2 + h**2 / 2)
    else:
        for j in range(p + 1):
            newton = sympy.binomial(h, j) if j else sympy.Integer(1)
            newton = sympy.expand_func(newton)
            for i in range(j + 1):
                _add(terms, (i,), newton * (-1) ** (j - i) * sympy.binomial(j, i))

    return ExpansionStencil(
        target="f[n+1]",
        axes=("n1",),
        slow_orders=(p,),
        truncation_order=p + 1,
        terms=_clean(terms),
        displacement=(h,),
    )


def two_scale_stencil(
    n: IntOrExpr = N,
    m1: IntOrExpr = M1,
    m2: IntOrExpr = M2,
    orders: Tuple[int, int] = (2, 2),
    direction: int = 1,
) -> ExpansionStencil:
    """
    f[n+1] or f[n-1] through g on (n1, n2) = (M1 n / N, M2 n / N^2).

    Args:
        n: Lattice ratio N
        m1: Scale factor on the first slow lattice
        m2: Scale factor on the second slow lattice
        orders: (2, 2) for the nine-point form or (2, 1) for the five-point form
        direction: +1 for f[n+1], -1 for f[n-1]

    Returns:
        ExpansionStencil over shifts (i, j)
    """
    orders = tuple(orders)
    if orders not in ((2, 2), (2, 1)):
        raise DomainException("Unsupported slow-order pair", orders=orders)
    if direction not in (1, -1):
        raise DomainException("Direction must be +1 or -1", direction=direction)
    _check_n(n)
    _check_divides("M1", m1, n)
    if isinstance(n, int):
        _check_divides("M2", m2, n * n)

    n_ = sympy.sympify(n)
    a = direction * sympy.sympify(m1) / n_
    b = direction * sympy.sympify(m2) / n_**2
    terms: Dict[Shift, sympy.Expr] = {}

    # order 2 in n1: centered first and second differences
    _add(terms, (0, 0), 1 - a**2)
    _add(terms, (1, 0), a / 2 + a**2 / 2)
    _add(terms, (-1, 0), -a / 2 + a**2 / 2)

    if orders == (2, 2):
        _add(terms, (0, 1), b / 2)
        _add(terms, (0, -1), -b / 2)
        mixed = a * b / 4
        _add(terms, (1, 1), mixed)
        _add(terms, (-1, -1), mixed)
        _add(terms, (1, -1), -mixed)
        _add(terms, (-1, 1), -mixed)
        truncation = 4
    else:
        # order 1 in n2: one-sided difference toward the target
        _add(terms, (0, direction), direction * b)
        _add(terms, (0, 0), -direction * b)
        truncation = 3

    return ExpansionStencil(
        target="f[n+1]" if direction == 1 else "f[n-1]",
        axes=("n1", "n2"),
        slow_orders=orders,
        truncation_order=truncation,
        terms=_clean(terms),
        displacement=(a, b),
    )


def cross_shift_stencil(
    n: IntOrExpr = N,
    m1: IntOrExpr = M1,
    m2: IntOrExpr = M2,
    dn: int = 1,
    dm: int = 1,
) -> ExpansionStencil:
    """
    f[n+dn, m+dm] through g on (n1, m1, m2) = (M1 n / N, M2 m / N, m / N^2).

    g is of order 2 in n1 and m1 and of order 1 in m2; terms beyond 1/N^2
    are dropped. The m2 difference is always taken forward, which is exact
    for order 1 whatever the sign of dm.
    """
    n_ = sympy.sympify(n)
    a = dn * sympy.sympify(m1) / n_
    b = dm * sympy.sympify(m2) / n_
    c = sympy.Integer(dm) / n_**2
    terms: Dict[Shift, sympy.Expr] = {}

    _add(terms, (0, 0, 0), 1 - a**2 - b**2 - c)
    _add(terms, (1, 0, 0), a / 2 + a**2 / 2)
    _add(terms, (-1, 0, 0), -a / 2 + a**2 / 2)
    _add(terms, (0, 1, 0), b / 2 + b**2 / 2)
    _add(terms, (0, -1, 0), -b / 2 + b**2 / 2)
    mixed = a * b / 4
    _add(terms, (1, 1, 0), mixed)
    _add(terms, (-1, -1, 0), mixed)
    _add(terms, (1, -1, 0), -mixed)
    _add(terms, (-1, 1, 0), -mixed)
    _add(terms, (0, 0, 1), c)

    return ExpansionStencil(
        target=f"f[n{dn:+d},m{dm:+d}]",
        axes=("n1", "m1", "m2"),
        slow_orders=(2, 2, 1),
        truncation_order=3,
        terms=_clean(terms),
        displacement=(a, b, c),
    )
