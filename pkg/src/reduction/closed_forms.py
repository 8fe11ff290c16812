"""
Closed-form Reductions
Reduced-equation coefficients of the mKdV, Hietarinta and VKVM lattices in
exact arithmetic, with the alternative printed forms kept for cross-checks
"""
import logging
from typing import Any, Dict, Optional

import sympy

from core.exception import DegenerateException
from models import HietarintaModel, MKdVModel, NiKdVModel, VKVMModel
from reduction.reduced import ReducedEquation, build_reduced
from reduction.scales import ScaleTriple, solve_scales
from reduction.wavenumber import Wavenumber, as_wavenumber
from utils.numbers import to_sympy

logger = logging.getLogger(__name__)

I = sympy.I


def _require_nonzero(value: sympy.Expr, what: str, **context: Any) -> None:
    if abs(complex(sympy.N(value, 30))) < 1e-25:
        raise DegenerateException(f"{what} vanishes", **context)


def reduce_mkdv(p: Any, q: Any, cos_k: Any, M2: Any, sin_sign: int = 1,
                branch: Optional[int] = None) -> ReducedEquation:
    """
    Reduced equation of the lattice mKdV equation.

    Args:
        p, q: Lattice parameters
        cos_k: Rational cos k (or a Wavenumber)
        M2: Integer scale on m1
        sin_sign: Sign of sin k
        branch: Optional branch of S

    Returns:
        ReducedEquation with psi2 = phi^2 / 2 and no mean-field term
    """
    model = MKdVModel(p=p, q=q)
    wavenumber = as_wavenumber(cos_k, sin_sign)
    scales = solve_scales(model, wavenumber, M2, branch=branch)

    p, q = model.exact_params()["p"], model.exact_params()["q"]
    c, s, z = wavenumber.exact_cos, wavenumber.exact_sin, wavenumber.exact_z
    S = scales.S_exact
    m = to_sympy(scales.M2)

    d1 = z * (p - q) - (p + q)
    d2 = z * (p + q) - (p - q)
    c1 = S**2 * z**2 * p * q * (p - q) * (p - q - z * (p + q)) / d1**2
    c2 = S**2 * z * 2 * p * q * (p - q) * ((z**2 + 1) * (p + q) - 2 * z * (p - q)) / d1**2
    harmonic2 = (1 - z**2) ** 3 * 2 * p * q * (p**2 - q**2) / (z * d1**2 * d2**2)
    p1 = sympy.Rational(1, 2)

    trig = {
        "c1_trig": -m**2 * (p - q) / (16 * p * q) * ((p + q) * c - (p - q) + I * (p + q) * s),
        "c2_trig": m**2 * (p - q) / (4 * p * q) * ((p + q) * c - (p - q)),
        "c3_trig": I * 2 * p * q * (p**2 - q**2) * s**3 / ((p**2 + q**2) - (p**2 - q**2) * c) ** 2,
        "continuum_trig": -m**2 * (p**2 - q**2) * s / (4 * p * q),
    }
    values = {
        "c1": c1,
        "c2": c2,
        "cubic": harmonic2 * p1,
        "cubic_local": sympy.Integer(0),
        "harmonic2_coupling": harmonic2,
        "nonlocal_coupling": sympy.Integer(0),
        "p1": p1,
    }
    return build_reduced(model, wavenumber, scales, values, "closed_form", printed=trig, psi0_order=3)


def _hietarinta_split_cubic(e1, e2, o1, P1, P2, z, p1) -> Dict[str, sympy.Expr]:
    """Printed third-order coefficients c3, c5 through Q1..Q6 and R1..R4"""
    Q = [
        P1 * P2 * (P1 * e1 + P2 * e2),
        P1**3 * (e1 - e2) + P2**3 * (e2 - o1) + P1 * P2 * (P2 * e1 + 2 * P1 * e2 - P1 * o1),
        -P1 * (P1**2 * (e1 - e2) + P2**2 * (e1 + 4 * o1 - 3 * e2) + P1 * P2 * (3 * e2 - e1)),
        -P2 * (P1**2 * (4 * e1 - 3 * e2 + o1) + P2**2 * (o1 - e2) + P1 * P2 * (3 * e2 - o1)),
        -P1**3 * (e1 - e2) - P2**3 * (e2 - o1) - P1 * P2 * (P2 * e1 - 2 * P1 * e2 - P1 * o1),
        P1 * P2 * (P1 * e2 + P2 * o1),
    ]
    shifted = e2**2 - e1 * e2
    R = [
        P2 * (P1**2 + P2**2 + P1 * P2 + P2 * shifted),
        P2**3 + shifted * (P2**2 - P1**2) + P1 * P2 * (shifted + P1 + 3 * P2),
        -P2**3 - shifted * (P2**2 - P1**2) - P1 * P2 * (shifted + P1 + P2),
        P1 * (P1 * e2**2 - P2**2 - P1 * e1 * e2),
    ]
    a = P1 + P2 * z
    b = P1 * z + P2
    sextic = sum(Qi * z ** (5 - i) for i, Qi in enumerate(Q))
    quartic = R[0] * z**4 + R[1] * z**3 + R[2] * z + R[3]
    c3 = (z - 1) * (P1 - P2) * sextic / (a**2 * b**2 * z * e2 * (P1 - e1 * e2))
    c5 = (z - 1) ** 2 * (P1 - P2) * quartic / (a**2 * b**2 * z * e2)
    printed = {f"Q{i + 1}": Qi for i, Qi in enumerate(Q)}
    printed.update({f"R{i + 1}": Ri for i, Ri in enumerate(R)})
    printed.update({"c3_split": c3, "c5_split": c5, "merged_split": c3 + c5 * p1})
    return printed


def reduce_hietarinta(e1: Any, e2: Any, o1: Any, cos_k: Any, M2: Any, sin_sign: int = 1,
                      branch: Optional[int] = None) -> ReducedEquation:
    """
    Reduced equation of the Hietarinta equation with o2 on the reality condition.

    The merged cubic coefficient is the trigonometric form; the printed
    third-order pair (c3, c5) is carried in `printed` only, since its merge
    c3 + c5 p1 disagrees with the expansion.

    Returns:
        ReducedEquation with psi2 = p1 phi^2 and the mean-field coupling
    """
    model = HietarintaModel(e1=e1, e2=e2, o1=o1)
    wavenumber = as_wavenumber(cos_k, sin_sign)
    scales = solve_scales(model, wavenumber, M2, branch=branch)

    params = model.exact_params()
    e1, e2, o1 = params["e1"], params["e2"], params["o1"]
    c, s, z = wavenumber.exact_cos, wavenumber.exact_sin, wavenumber.exact_z
    S = scales.S_exact
    m = to_sympy(scales.M2)

    P1 = e1 * (e2 - o1)
    P2 = o1 * (e1 - e2)
    a = P1 + P2 * z
    b = P1 * z + P2
    _require_nonzero(a * b, "P1 + P2 z", cos_k=wavenumber.label)

    c1 = S**2 * z**2 * P2 * (P1**2 - P2**2) * b / (4 * a**2)
    c2 = -S**2 * z * P2 * (P1**2 - P2**2) * (P1 * (z**2 + 1) + 2 * P2 * z) / (2 * a**2)
    c4 = (z - 1) ** 2 * (P1 - P2) * (e2**2 - e1 * e2 + P2) / (b * a * e2)
    p1 = (e1 * z - o1) / (e1 * o1 * (z - 1))
    p2 = (e1 + o1) / (e1 * o1)
    modulus = P1**2 + P2**2 + 2 * P1 * P2 * c
    cubic = 2 * (P1 - P2) * (P1 * (e1 - e2) + P2 * (e2 - o1)) * (c - 1) / (e2 * (o1 * e2 + P2) * modulus)

    printed = {
        "c1_trig": -P2 * m**2 / (4 * (P2**2 - P1**2)) * (P1 * c + P2 + I * P1 * s),
        "c2_trig": P2 * (P1 * c + P2) * m**2 / (P2**2 - P1**2),
        "c4_trig": -2 * (P1 - P2) * (P1 - e2**2 + o1 * e2) * (c - 1) / (e2 * modulus),
        "P1": P1,
        "P2": P2,
    }
    printed.update(_hietarinta_split_cubic(e1, e2, o1, P1, P2, z, p1))

    values = {
        "c1": c1,
        "c2": c2,
        "cubic": cubic,
        "nonlocal_coupling": c4,
        "p1": p1,
        "p2": p2,
    }
    return build_reduced(model, wavenumber, scales, values, "closed_form", printed=printed, psi0_order=3)


def reduce_vkvm(alpha: Any, cos_k: Any, M2: Any = None, sin_sign: int = 1,
                branch: Optional[int] = None, scales: Optional[ScaleTriple] = None) -> ReducedEquation:
    """
    Reduced equation of the lattice Volterra-Kac-van Moerbeke equation.

    Args:
        alpha: Lattice parameter, alpha != 1
        cos_k: Rational cos k (or a Wavenumber)
        M2: Integer scale on m1; ignored when scales are given
        scales: Precomputed scales, e.g. from scales_from_S at alpha = 1/2

    Returns:
        ReducedEquation with the mean-field coupling
    """
    model = VKVMModel(alpha=alpha)
    wavenumber = as_wavenumber(cos_k, sin_sign) if scales is None else scales.wavenumber
    if scales is None:
        scales = solve_scales(model, wavenumber, M2, branch=branch)
    wavenumber.check_carrier()

    a = model.exact_params()["alpha"]
    if a == 1:
        raise DegenerateException("vkvm: alpha = 1 makes the mean-field constant singular")
    c, s, z = wavenumber.exact_cos, wavenumber.exact_sin, wavenumber.exact_z
    S = scales.S_exact if scales.S_exact is not None else to_sympy(complex(scales.S).real) + I * to_sympy(complex(scales.S).imag)

    A1 = a * (z + 1) - z
    A2 = a * (z + 1) - 1
    _require_nonzero(A1 * A2, "alpha (z + 1) - z or alpha (z + 1) - 1", cos_k=wavenumber.label)

    c1 = S**2 * z**2 * a * (1 - 2 * a) * A1 / (4 * A2**2)
    c2 = S**2 * z * a * (2 * a - 1) * (a * (z + 1) ** 2 - z**2 - 1) / (2 * A2**2)
    c3 = a * (1 - z**2) / (A1 * A2)
    c4 = a * (1 - z**2) * (z**2 - z + 1) / (A1 * A2 * z)

    # psi2 from the second harmonic: Lambda(z^2, Omega^2) psi2 = -a z (Omega^2 - 1) phi^2
    P, Q = a, 1 - a
    big_omega = (P - Q * z) / (P * z - Q)
    Z, W = z**2, big_omega**2
    lam2 = -a + a * Z * W + (1 - a) * Z - (1 - a) * W
    _require_nonzero(lam2, "Lambda(z^2, Omega^2)", cos_k=wavenumber.label)
    p1 = -a * z * (W - 1) / lam2
    p2 = c * (2 * a - 1) / ((a - 1) * (c - 1))

    den = 2 * a * (a - 1) * (c + 1) + 1
    printed: Dict[str, Any] = {
        "c3_trig": -2 * I * a * s / den,
        "p1_printed": (1 - 2 * a) * z / (a * (z + 1) ** 2 - z**2 - 1),
        "p2_printed": (2 * a * (1 + z**2) - z**2 - 1) / ((1 - z**2) * (a - 1)),
        "c4hat_printed": I * (2 * c - 1) * s / ((a - 1) * (c - 1) * den),
    }
    if 2 * a != 1:
        m = to_sympy(scales.M2)
        printed["c1_trig"] = -a * m**2 / (4 * (2 * a - 1)) * ((a - 1) * c + a + I * (a - 1) * s)
        printed["c2_trig"] = a * ((a - 1) * c + a) * m**2 / (2 * a - 1)

    values = {
        "c1": c1,
        "c2": c2,
        "cubic": c4 * p1,
        "cubic_local": sympy.Integer(0),
        "harmonic2_coupling": c4,
        "nonlocal_coupling": c3,
        "p1": p1,
        "p2": p2,
    }
    return build_reduced(model, wavenumber, scales, values, "closed_form", printed=printed, psi0_order=3)


def reduce_nikdv(alpha: Any, beta: Any, cos_k: Any, M2: Any = 1, sin_sign: int = 1,
                 branch: Optional[int] = None, derivation_only: bool = False) -> ReducedEquation:
    """
    Reduced equation of the non-integrable lattice KdV, derived by the expansion engine.

    Args:
        alpha, beta: Lattice parameters
        cos_k: Rational cos k (or a Wavenumber)
        M2: Scale on m1
        derivation_only: Allow irrational M1 (no integer sub-lattices)

    Returns:
        ReducedEquation from the engine, S real
    """
    # the engine builds on this package
    from epsilon_engine import derive

    model = NiKdVModel(alpha=alpha, beta=beta)
    wavenumber = as_wavenumber(cos_k, sin_sign)
    model.check_reality(wavenumber.k)
    scales = solve_scales(model, wavenumber, M2, branch=branch, derivation_only=derivation_only)
    return derive(model, wavenumber, scales)


REDUCERS = {
    "mkdv": reduce_mkdv,
    "hietarinta": reduce_hietarinta,
    "vkvm": reduce_vkvm,
    "nikdv": reduce_nikdv,
}
