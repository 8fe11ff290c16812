from collections import Counter
from fractions import Fraction

import mpmath
import pytest

from core.exception import DomainException, InadmissibleException
from epsilon_engine import (
    EnvelopeSymbol,
    closed_form,
    derive,
    expand,
    export_equations,
    monomial_key,
    psi,
    solve_hierarchy,
    verify_closed_forms,
)
from models import HietarintaModel, MKdVModel, NiKdVModel, VKVMModel
from reduction import Wavenumber, reduce_nikdv, solve_scales

COS_VALUES = [Fraction(v, 10) for v in (-9, -7, -4, -2, 1, 3, 5, 6, 8, 9)]


def _conjugate(symbol):
    if symbol.harmonic == 0:
        return symbol
    return EnvelopeSymbol(harmonic=symbol.harmonic, conjugated=not symbol.conjugated, shift=symbol.shift)


def _by_order(equations):
    return {(eq.eps_order, eq.harmonic): eq for eq in equations}


def test_conjugate_of_mean_field_is_rejected():
    with pytest.raises(DomainException):
        psi(0, 0, 0, conjugated=True)


def test_monomial_key_is_order_free():
    a, b = psi(1, 1, 0), psi(2, 0, 0, conjugated=True)
    assert monomial_key([a, b]) == monomial_key([b, a])


@pytest.mark.parametrize("cos_k", COS_VALUES)
def test_first_order_is_annihilated_by_the_carrier(cos_k):
    model = MKdVModel(p=2, q=1)
    wavenumber = Wavenumber(cos_k=cos_k)
    reduced = derive(model, wavenumber, closed_form(model, wavenumber).scales)
    assert reduced.diagnostics["dispersion_residual"] < 1e-20
    assert reduced.diagnostics["scale_residual"] < 1e-20


def test_second_order_fails_with_wrong_M1():
    model = MKdVModel(p=2, q=1)
    wavenumber = Wavenumber(cos_k=0)
    scales = solve_scales(model, wavenumber, 4)
    wrong = scales.model_copy(update={"M1": scales.M1 + 1})
    with pytest.raises(InadmissibleException) as info:
        solve_hierarchy(expand(model, wavenumber, wrong), wrong, model, wavenumber)
    assert info.value.deficit > 0


def test_second_order_first_difference_coefficient():
    model = HietarintaModel(e1=2, e2=1, o1=3)
    wavenumber = Wavenumber(cos_k=Fraction(1, 5))
    scales = closed_form(model, wavenumber).scales
    eq = _by_order(expand(model, wavenumber, scales))[(2, 1)]
    z = complex(wavenumber.mp_z())
    z_part, _ = model.linear_symbol_derivatives(z, model.Omega_of(wavenumber.k))
    expected = scales.m1_float() / 2 * z_part
    assert complex(eq.coefficient(psi(1, 1, 0, 0))) == pytest.approx(expected, rel=1e-9)
    assert complex(eq.coefficient(psi(1, -1, 0, 0))) == pytest.approx(-expected, rel=1e-9)


@pytest.mark.parametrize("model", [MKdVModel(p=2, q=1), HietarintaModel(e1=2, e2=1, o1=3), VKVMModel(alpha="1/3")])
def test_negative_harmonics_are_conjugates(model):
    wavenumber = Wavenumber(cos_k=Fraction(3, 10))
    equations = _by_order(expand(model, wavenumber, closed_form(model, wavenumber).scales))
    for (order, harmonic), eq in equations.items():
        if harmonic <= 0:
            continue
        mirror = equations[(order, -harmonic)]
        assert len(mirror.terms) == len(eq.terms)
        for monomial, coeff in eq.terms.items():
            partner = mirror.coefficient(*(_conjugate(s) for s in monomial))
            assert abs(partner - mpmath.conj(coeff)) <= 1e-20 * max(1, abs(coeff))


def test_linearized_expansion_has_no_sources():
    model = MKdVModel(p=2, q=1)
    wavenumber = Wavenumber(cos_k=0)
    scales = solve_scales(model, wavenumber, 4)
    equations = _by_order(expand(model, wavenumber, scales, linearized=True))
    assert not equations[(2, 2)].involves_harmonic(1)
    assert all(len(monomial) == 1 for eq in equations.values() for monomial in eq.terms)
    linear = derive(model, wavenumber, scales, linearized=True)
    full = derive(model, wavenumber, scales)
    assert abs(linear.p1) < 1e-25
    assert abs(linear.cubic) < 1e-25
    assert linear.c1 == pytest.approx(full.c1, rel=1e-12)
    assert linear.c2 == pytest.approx(full.c2, rel=1e-12)


def test_mkdv_benchmark_from_engine():
    reduced = derive(MKdVModel(p=2, q=1), 0, solve_scales(MKdVModel(p=2, q=1), 0, 4))
    assert reduced.source == "engine"
    assert reduced.C1 == pytest.approx(-1.5 - 0.5j, abs=1e-12)
    assert reduced.C2 == pytest.approx(2j, abs=1e-12)
    assert reduced.C3 == pytest.approx(0.24, abs=1e-12)
    assert reduced.continuum == pytest.approx(-6, abs=1e-12)
    assert reduced.p1 == pytest.approx(0.5, abs=1e-12)
    assert reduced.psi0_order == 3
    assert abs(reduced.nonlocal_coupling) < 1e-20


def test_ledger_records_dropped_orders():
    model = HietarintaModel(e1=2, e2=1, o1=3)
    wavenumber = Wavenumber(cos_k=Fraction(1, 2))
    ledger = Counter()
    expand(model, wavenumber, closed_form(model, wavenumber).scales, ledger=ledger)
    assert min(ledger) == 4
    assert ledger[4] > 0


def test_nikdv_derivation_only():
    base = reduce_nikdv("1/2", 1, Fraction(1, 2), derivation_only=True)
    double = reduce_nikdv("1/2", 2, Fraction(1, 2), derivation_only=True)
    free = reduce_nikdv("1/2", 0, Fraction(1, 2), derivation_only=True)
    assert base.scales.mode == "derivation"
    for value in (base.c1, base.c2, base.cubic, base.p1, base.p2):
        assert value == value and abs(value) < 1e12
    assert double.c1 == pytest.approx(base.c1, rel=1e-12)
    assert double.p1 == pytest.approx(2 * base.p1, rel=1e-9)
    assert double.cubic == pytest.approx(4 * base.cubic, rel=1e-9)
    assert abs(free.cubic) < 1e-20
    assert abs(free.p1) < 1e-20


def test_nikdv_needs_derivation_mode_at_irrational_velocity():
    with pytest.raises(InadmissibleException):
        reduce_nikdv("1/2", 1, Fraction(1, 2))


def test_export_uses_decimal_strings():
    model = MKdVModel(p=2, q=1)
    wavenumber = Wavenumber(cos_k=0)
    equations = expand(model, wavenumber, solve_scales(model, wavenumber, 4))
    records = export_equations(equations, digits=12, tol=1e-20)
    first = next(r for r in records if r["order"] == 1 and r["harmonic"] == 1)
    assert first["terms"] == []
    second = next(r for r in records if r["order"] == 2 and r["harmonic"] == 2)
    assert any(term["symbols"] == ["psi2[0,0,0]"] for term in second["terms"])
    assert all(isinstance(term["re"], str) for term in second["terms"])


@pytest.mark.parametrize("kind", ["mkdv", "hietarinta", "vkvm"])
def test_engine_matches_closed_forms(kind):
    report = verify_closed_forms(kind, sample_count=5, seed=7)
    assert len(report.points) == 5
    assert report.max_deviation < 1e-10
    printed = report.worst_printed()
    assert printed["c1_trig"] < 1e-10
    assert printed["c2_trig"] < 1e-10


def test_printed_vkvm_mean_field_constant_disagrees():
    report = verify_closed_forms("vkvm", sample_count=3, seed=11)
    assert report.worst_printed()["p2_printed"] > 1e-6


def test_vkvm_half_against_closed_forms():
    report = verify_closed_forms(VKVMModel(alpha="1/2"), sample_count=2, cos_values=["1/2", "-1/5"])
    assert report.max_deviation < 1e-8


def test_nikdv_has_no_closed_forms():
    with pytest.raises(DomainException):
        verify_closed_forms("nikdv", sample_count=1)
