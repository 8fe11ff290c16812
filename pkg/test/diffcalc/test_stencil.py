from fractions import Fraction
import math

import numpy as np
import pytest
import sympy

from core.exception import DomainException, StencilOrderException
from diffcalc import (
    N, M1, M2,
    SlowFunctionSample,
    cross_shift_stencil,
    one_scale_stencil,
    two_scale_stencil,
)


def _as_fractions(coeffs):
    return {shift: Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for shift, c in coeffs.items()}


def test_symmetric_p2_matches_printed_form():
    stencil = one_scale_stencil(2, N, 1, symmetric=True)
    terms = stencil.terms
    assert sympy.simplify(terms[(1,)] - (1 / (2 * N) + 1 / (2 * N**2))) == 0
    assert sympy.simplify(terms[(-1,)] - (-1 / (2 * N) + 1 / (2 * N**2))) == 0
    assert sympy.simplify(terms[(0,)] - (1 - 1 / N**2)) == 0
    assert stencil.truncation_order == 3


def test_asymmetric_p1_and_p2():
    p1 = one_scale_stencil(1, N, 1)
    assert sympy.simplify(p1.terms[(1,)] - 1 / N) == 0
    assert sympy.simplify(p1.terms[(0,)] - (1 - 1 / N)) == 0

    p2 = one_scale_stencil(2, N, 1)
    assert sympy.simplify(p2.terms[(2,)] - (-1 / (2 * N) + 1 / (2 * N**2))) == 0
    assert sympy.simplify(p2.terms[(1,)] - (4 / (2 * N) - 2 / (2 * N**2))) == 0


def test_odd_symmetric_and_bad_order_rejected():
    with pytest.raises(DomainException):
        one_scale_stencil(3, 6, 1, symmetric=True)
    with pytest.raises(DomainException):
        one_scale_stencil(1, 6, 1, symmetric=True)
    with pytest.raises(DomainException):
        one_scale_stencil(4, 6, 1)
    with pytest.raises(DomainException):
        one_scale_stencil(2, 6, 4)


def test_zero_shift_is_consistent_at_leading_order():
    stencils = [
        one_scale_stencil(2, N, 1, symmetric=True),
        one_scale_stencil(3, N, 1),
        two_scale_stencil(N, M1, M2, (2, 2)),
        two_scale_stencil(N, M1, M2, (2, 1), direction=-1),
        cross_shift_stencil(N, M1, M2),
    ]
    for stencil in stencils:
        leading = stencil.order_terms()[0]
        assert list(leading.values()) == [1]
        assert all(s == 0 for s in next(iter(leading)))


def test_one_scale_exact_on_random_polynomials():
    rng = np.random.default_rng(7)
    for p in (1, 2, 3):
        for big_n in range(2, 11):
            for m in [d for d in range(1, big_n + 1) if big_n % d == 0]:
                variants = [False, True] if p == 2 else [False]
                for symmetric in variants:
                    stencil = one_scale_stencil(p, big_n, m, symmetric=symmetric)
                    coeffs = _as_fractions(stencil.evaluate())
                    h = Fraction(m, big_n)
                    for _ in range(50):
                        poly = [int(c) for c in rng.integers(-9, 10, size=p + 1)]
                        g = lambda x: sum(c * x**k for k, c in enumerate(poly))
                        x0 = Fraction(int(rng.integers(-20, 20)))
                        predicted = sum(c * g(x0 + s) for (s,), c in coeffs.items())
                        assert predicted == g(x0 + h)


def test_two_scale_printed_coefficients():
    stencil = two_scale_stencil(N, 1, 1, (2, 2))
    t = stencil.terms
    assert sympy.simplify(t[(1, 0)] - (1 / (2 * N) + 1 / (2 * N**2))) == 0
    assert sympy.simplify(t[(0, 1)] - 1 / (2 * N**2)) == 0
    assert sympy.simplify(t[(0, -1)] + 1 / (2 * N**2)) == 0
    assert sympy.simplify(t[(1, 1)] - 1 / (4 * N**3)) == 0
    assert sympy.simplify(t[(1, -1)] + 1 / (4 * N**3)) == 0
    assert stencil.truncation_order == 4


def test_two_scale_mixed_order_has_no_mixed_term():
    stencil = two_scale_stencil(N, M1, M2, (2, 1))
    t = stencil.terms
    assert (1, 1) not in t and (1, -1) not in t
    assert sympy.simplify(t[(0, 1)] - M2 / N**2) == 0
    assert stencil.truncation_order == 3

    backward = two_scale_stencil(N, M1, M2, (2, 1), direction=-1)
    assert sympy.simplify(backward.terms[(0, -1)] - M2 / N**2) == 0


def test_two_scale_unsupported_orders():
    with pytest.raises(DomainException):
        two_scale_stencil(N, M1, M2, (1, 1))


def test_two_scale_exact_within_declared_order():
    x, y = sympy.symbols("x y")
    g_22 = sympy.Lambda((x, y), 3 * x**2 - 2 * x + 5 * y + 7 * x * y - 1)
    g_21 = sympy.Lambda((x, y), 3 * x**2 - 2 * x + 5 * y - 1)
    for direction in (1, -1):
        for orders, g in (((2, 2), g_22), ((2, 1), g_21)):
            stencil = two_scale_stencil(6, 2, 3, orders, direction=direction)
            at = (sympy.Rational(1, 3), sympy.Integer(2))
            predicted = stencil.apply(g, at)
            assert sympy.simplify(predicted - g(*stencil.target_point(at))) == 0


def test_constant_is_reproduced():
    for stencil in (two_scale_stencil(8, 2, 4), cross_shift_stencil(8, -2, 4)):
        assert stencil.apply(lambda *args: sympy.Integer(5), (0,) * len(stencil.axes)) == 5


def test_cross_shift_linear_in_n1():
    stencil = cross_shift_stencil(N, M1, M2)
    slope = sympy.Symbol("s")
    g = lambda a, b, c: slope * a
    at = (sympy.Integer(0),) * 3
    values = {shift: coeff for shift, coeff in stencil.terms.items()}
    predicted = sum(c * g(*[a + s for a, s in zip(at, shift)]) for shift, c in values.items())
    assert sympy.simplify(predicted - M1 / N * slope) == 0


def test_cross_shift_exact_on_declared_polynomials():
    rng = np.random.default_rng(11)
    for dn, dm in ((1, 1), (1, 0), (0, 1), (-1, 1), (3, 0), (0, -1), (1, -1)):
        stencil = cross_shift_stencil(10, -5, 4, dn=dn, dm=dm)
        coeffs = _as_fractions(stencil.evaluate())
        shift_point = [Fraction(int(sympy.numer(d)), int(sympy.denom(d))) for d in stencil.target_point((0, 0, 0))]
        for _ in range(20):
            c = [int(v) for v in rng.integers(-9, 10, size=7)]
            g = lambda a, b, t: (c[0] + c[1] * a + c[2] * a * a + c[3] * b + c[4] * b * b
                                 + c[5] * a * b + c[6] * t)
            base = [Fraction(int(v)) for v in rng.integers(-5, 5, size=3)]
            predicted = sum(k * g(*[x + s for x, s in zip(base, shift)]) for shift, k in coeffs.items())
            expected = g(*[x + d for x, d in zip(base, shift_point)])
            assert predicted == expected


def test_cross_shift_close_on_slow_gaussian():
    big_n, m1, m2 = 10, -5, 4
    stencil = cross_shift_stencil(big_n, m1, m2)
    coeffs = {shift: float(c) for shift, c in stencil.evaluate().items()}
    width = 25.0
    g = lambda a, b, t: math.exp(-((a - b) ** 2) / width**2) * (1 + 0.01 * t)
    base = (3.0, -2.0, 1.0)
    predicted = sum(c * g(*[x + s for x, s in zip(base, shift)]) for shift, c in coeffs.items())
    target = (base[0] + m1 / big_n, base[1] + m2 / big_n, base[2] + 1 / big_n**2)
    assert predicted == pytest.approx(g(*target), abs=1e-4)


def test_to_dict_structure():
    payload = one_scale_stencil(2, N, 1, symmetric=True).to_dict()
    assert payload["truncation_order"] == 3
    by_shift = {tuple(row["shift"]): row["coefficient"] for row in payload["terms"]}
    assert by_shift[(1,)] == ["N + 1", "2*N**2"]


def test_apply_samples_checks_declared_order():
    stencil = one_scale_stencil(2, 4, 1)
    sample = SlowFunctionSample(values=[n * n for n in range(6)], declared_order=2)
    assert stencil.apply_samples(sample, 1) == sympy.Rational(25, 16)

    cubic = SlowFunctionSample(values=[n**3 for n in range(6)], declared_order=3)
    with pytest.raises(StencilOrderException):
        stencil.apply_samples(cubic, 1)
