from fractions import Fraction

import pytest
import sympy

from core.exception import DegenerateException
from models import HietarintaModel, MKdVModel, VKVMModel
from reduction import (
    Wavenumber,
    pq_of,
    reduce_hietarinta,
    reduce_mkdv,
    reduce_vkvm,
    scales_from_S,
)
from utils.numbers import relative_deviation

COS_VALUES = [Fraction(v, 10) for v in (-9, -7, -4, -2, 1, 3, 5, 6, 8, 9)]


def _smallest_M2(model, cos_k):
    return pq_of(model).m1_ratio(cos_k).denominator


def _is_zero(expr):
    return sympy.simplify(expr) == 0


def test_mkdv_benchmark_exact():
    reduced = reduce_mkdv(2, 1, 0, 4)
    assert reduced.scales.M1 == -5
    assert _is_zero(reduced.exact["C1"] - (-sympy.Rational(3, 2) - sympy.I / 2))
    assert _is_zero(reduced.exact["C2"] - 2 * sympy.I)
    assert _is_zero(reduced.exact["C3"] - sympy.Rational(6, 25))
    assert _is_zero(reduced.exact["continuum"] + 6)
    assert _is_zero(reduced.exact["cubic"] - sympy.I * sympy.Rational(12, 25))
    assert reduced.C3 == pytest.approx(0.24, abs=1e-14)
    assert reduced.p2 is None


def test_mkdv_continuum_at_three_fifths():
    reduced = reduce_mkdv(2, 1, Fraction(3, 5), 5)
    assert reduced.scales.M1 == -4
    assert _is_zero(reduced.exact["continuum"] + sympy.Rational(15, 2))


@pytest.mark.parametrize("cos_k", COS_VALUES)
def test_mkdv_cubic_is_real(cos_k):
    model = MKdVModel(p=2, q=1)
    reduced = reduce_mkdv(2, 1, cos_k, _smallest_M2(model, cos_k))
    assert abs(reduced.C3.imag) <= 1e-12 * max(1.0, abs(reduced.C3))


@pytest.mark.parametrize("cos_k", COS_VALUES[::3])
def test_mkdv_trig_forms_agree(cos_k):
    model = MKdVModel(p=3, q=-1)
    reduced = reduce_mkdv(3, -1, cos_k, _smallest_M2(model, cos_k))
    assert relative_deviation(reduced.printed["c1_trig"], reduced.c1) < 1e-10
    assert relative_deviation(reduced.printed["c2_trig"], reduced.c2) < 1e-10
    assert relative_deviation(reduced.printed["c3_trig"], reduced.cubic) < 1e-10
    assert relative_deviation(reduced.printed["continuum_trig"], reduced.continuum) < 1e-10


@pytest.mark.parametrize("cos_k", COS_VALUES[1::3])
def test_hietarinta_trig_forms_agree(cos_k):
    model = HietarintaModel(e1=2, e2=1, o1=3)
    reduced = reduce_hietarinta(2, 1, 3, cos_k, _smallest_M2(model, cos_k))
    assert relative_deviation(reduced.printed["c1_trig"], reduced.c1) < 1e-10
    assert relative_deviation(reduced.printed["c2_trig"], reduced.c2) < 1e-10
    assert relative_deviation(reduced.printed["c4_trig"], reduced.nonlocal_coupling) < 1e-10
    assert reduced.p2 == pytest.approx(complex(Fraction(5, 6)), abs=1e-14)


def test_hietarinta_third_order_vanishes_at_long_waves():
    model = HietarintaModel(e1=2, e2=1, o1=3)
    near = [Fraction(999, 1000), Fraction(9999, 10000)]
    reduced = [reduce_hietarinta(2, 1, 3, c, _smallest_M2(model, c)) for c in near]
    assert abs(reduced[1].cubic) / abs(reduced[0].cubic) == pytest.approx(0.1, rel=0.05)
    assert abs(reduced[1].nonlocal_coupling) / abs(reduced[0].nonlocal_coupling) == pytest.approx(0.1, rel=0.1)


@pytest.mark.parametrize("cos_k", COS_VALUES[2::3])
def test_vkvm_trig_forms_agree(cos_k):
    model = VKVMModel(alpha="1/3")
    reduced = reduce_vkvm("1/3", cos_k, _smallest_M2(model, cos_k))
    assert relative_deviation(reduced.printed["c1_trig"], reduced.c1) < 1e-10
    assert relative_deviation(reduced.printed["c2_trig"], reduced.c2) < 1e-10
    assert relative_deviation(reduced.printed["c3_trig"], reduced.nonlocal_coupling) < 1e-10


def test_vkvm_half_has_no_dispersion_and_no_cubic():
    model = VKVMModel(alpha="1/2")
    wavenumber = Wavenumber(cos_k=Fraction(1, 2))
    z = complex(0.5, 3 ** 0.5 / 2)
    reduced = reduce_vkvm("1/2", wavenumber, scales=scales_from_S(model, wavenumber, 2 / (1 - z)))
    assert abs(reduced.c1) < 1e-12
    assert abs(reduced.c2) < 1e-12
    assert abs(reduced.cubic) < 1e-12
    assert abs(reduced.printed["c4hat_printed"]) < 1e-12
    assert "c1_trig" not in reduced.printed


def test_vkvm_alpha_one_is_degenerate():
    with pytest.raises(DegenerateException):
        reduce_vkvm(1, Fraction(1, 2), 1)


def test_plane_wave_factor_is_unimodular_to_leading_order():
    reduced = reduce_mkdv(2, 1, 0, 4)
    factor = reduced.plane_wave_factor(0.0, 0.0)
    assert factor == pytest.approx(1.0, abs=1e-15)
