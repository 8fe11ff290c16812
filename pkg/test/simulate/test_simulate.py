import math
from fractions import Fraction

import numpy as np
import pytest

from core.exception import InstabilityException, PacketSizingException
from models import MKdVModel, NiKdVModel
from reduction import reduce_mkdv, reduce_nikdv
from simulate import (
    PacketSpec,
    bond_density,
    demodulate,
    make_initial,
    mean_field,
    reduced_reference,
    rk4,
    run_full,
    run_reduced,
    run_semicontinuous,
    second_harmonic_ratio,
    slow_sites,
    validate_far_field,
)

MODEL = MKdVModel(p=2, q=1)
REDUCED = reduce_mkdv(2, 1, 0, 4)


def test_mean_field_solves_the_relation():
    rng = np.random.default_rng(3)
    phi = rng.normal(size=12) + 1j * rng.normal(size=12)
    psi0 = mean_field(phi, 0.75)
    a = bond_density(phi)
    assert np.allclose(psi0[:-1] + psi0[1:], 0.75 * a[:-1], atol=1e-12)
    assert psi0[-1] == pytest.approx(0.75 * a[-1], abs=1e-12)


def test_epsilon_must_be_reciprocal_integer():
    with pytest.raises(PacketSizingException):
        PacketSpec(epsilon=0.3)
    assert PacketSpec(epsilon=0.125).N == 8


def test_zero_amplitude_gives_background():
    init = make_initial(MODEL, PacketSpec(epsilon=0.125, amplitude=0.0), REDUCED)
    assert np.all(init.rows == 1.0)
    grid = run_full(MODEL, init, 20)
    assert np.all(grid.values == 1.0)


def test_first_harmonic_bound():
    packet = PacketSpec(epsilon=0.1, amplitude=0.5, harmonics_included=1)
    init = make_initial(MODEL, packet, REDUCED)
    assert np.max(np.abs(init.rows - 1.0)) <= 2 * 0.1 * 0.5 + 1e-15
    assert init.direction == "up_left"


def test_window_too_small():
    with pytest.raises(PacketSizingException):
        make_initial(MODEL, PacketSpec(epsilon=0.125, cols=50), REDUCED)


def test_packet_run_solves_the_lattice():
    packet = PacketSpec(epsilon=0.125, slow_time=1)
    grid = run_full(MODEL, make_initial(MODEL, packet, REDUCED), packet.m_steps)
    assert grid.rows == 65
    assert grid.max_residual(MODEL) < 1e-12
    assert grid.min_denominator > 0


def test_demodulation_recovers_the_envelope():
    packet = PacketSpec(epsilon=0.125)
    grid = run_full(MODEL, make_initial(MODEL, packet, REDUCED), 0)
    n2 = np.arange(-20, 21)
    history = demodulate(grid, REDUCED, packet.epsilon, n2, slow_times=[0])
    sites = slow_sites(REDUCED, packet.epsilon, n2, 0)
    exact = packet.envelope(packet.epsilon * REDUCED.scales.m1_float() * sites)
    assert np.max(np.abs(history.initial - exact)) < 0.02 * packet.amplitude
    spectral = demodulate(grid, REDUCED, packet.epsilon, n2, slow_times=[0], method="spectral")
    assert np.max(np.abs(spectral.initial - exact)) < 0.02 * packet.amplitude


def test_second_harmonic_amplitude_matches_p1():
    packet = PacketSpec(epsilon=0.125)
    grid = run_full(MODEL, make_initial(MODEL, packet, REDUCED), 0)
    assert second_harmonic_ratio(grid, REDUCED, packet.epsilon) == pytest.approx(abs(REDUCED.p1), abs=0.05)


def test_zero_envelope_stays_zero():
    history = run_reduced(REDUCED, np.zeros(30), 5)
    assert np.all(history.values == 0)
    assert not run_semicontinuous(REDUCED, np.zeros(30), 0.5, 0.05).values.any()


def test_reduced_plane_wave_step_matches_benchmark_coefficients():
    # mkdv benchmark: C1 = -3/2 - i/2, C2 = 2i, C3 = 6/25, evolution cubic 2 C3
    kappa, amplitude = 0.3, 0.2
    w, d = 2 * (math.cos(2 * kappa) - 1), 2 * (math.cos(kappa) - 1)
    expected = 1 - 1j * ((-1.5 - 0.5j) * w + 2j * d + 0.48 * amplitude**2)

    n = np.arange(40)
    phi0 = amplitude * np.exp(1j * kappa * n)
    history = run_reduced(REDUCED, phi0, 1)
    assert np.allclose(history.final[2:-2], expected * phi0[2:-2], atol=1e-13)
    assert REDUCED.C3_evolution == pytest.approx(2 * REDUCED.C3)
    assert REDUCED.plane_wave_factor(kappa, amplitude) == pytest.approx(expected, abs=1e-13)


def test_semicontinuous_cubic_rotation_uses_evolution_coefficient():
    local = REDUCED.model_copy(update={"c1": 0j, "c2": 0j})
    phi0 = np.full(12, 0.3 + 0j)
    history = run_semicontinuous(local, phi0, 1.0, 0.001)
    # i dphi/dt = 0.48 |phi|^2 phi for a uniform field
    assert history.final[6] == pytest.approx(0.3 * np.exp(-1j * 0.48 * 0.09), abs=1e-9)


def test_reduced_blow_up_reports_step():
    explosive = REDUCED.model_copy(update={"c1": 0j, "c2": 0j, "cubic": -5 + 0j})
    with pytest.raises(InstabilityException) as info:
        run_reduced(explosive, np.ones(10), 10)
    assert info.value.step == 2


def test_semicontinuous_linear_mode_rotates():
    linear = REDUCED.model_copy(update={"cubic": 0j})
    kappa = 0.3
    n = np.arange(64)
    phi0 = 0.1 * np.exp(1j * kappa * n)
    history = run_semicontinuous(linear, phi0, 0.2, 0.001)
    rate = linear.c1 * 2 * (math.cos(2 * kappa) - 1) + linear.c2 * 2 * (math.cos(kappa) - 1)
    expected = phi0[32] * np.exp(-rate * 0.2)
    assert abs(history.final[32] - expected) < 1e-7
    assert history.times[-1] == pytest.approx(0.2)


def test_rk4_is_fourth_order():
    n = np.arange(-40, 41)
    phi0 = 1 / np.cosh(n / 4) + 0j
    rhs = lambda phi: -(REDUCED.c2 * (np.roll(phi, 1) - 2 * phi + np.roll(phi, -1)) + REDUCED.cubic * np.abs(phi) ** 2 * phi)
    ends = [rk4(rhs, phi0, 1.0, dt)[-1] for dt in (0.02, 0.01, 0.005)]
    ratio = np.max(np.abs(ends[0] - ends[1])) / np.max(np.abs(ends[1] - ends[2]))
    assert 12 < ratio < 20


def test_far_field_converges_on_mkdv_benchmark():
    report = validate_far_field(MODEL, REDUCED, ["1/8", "1/16"], slow_time=5)
    assert report.reference == "semicontinuous"
    assert report.M1 == "-5"
    assert [row.N for row in report.rows] == [8, 16]
    assert report.rows[1].ratio >= 1.5
    assert report.rows[1].error < 0.2
    assert report.is_monotone
    assert report.rows[1].second_harmonic == pytest.approx(0.5, rel=0.3)


def test_explicit_map_reference_is_still_available():
    n2 = np.arange(-20, 21)
    phi0 = 0.5 / np.cosh(n2 / 8.0)
    stepped = reduced_reference(REDUCED, phi0, 2, n2, reference="map")
    assert stepped.source == "reduced"
    assert np.allclose(stepped.final, run_reduced(REDUCED, phi0, 2).final)
    smooth = reduced_reference(REDUCED, phi0, 2, n2)
    assert smooth.source == "semicontinuous"
    assert list(smooth.times) == pytest.approx([0.0, 1.0, 2.0])


def test_nikdv_packet_run_is_periodic_and_exact():
    model = NiKdVModel(alpha="1/2", beta=1)
    reduced = reduce_nikdv("1/2", 1, Fraction(1, 2), derivation_only=True)
    packet = PacketSpec(epsilon=0.125, amplitude=0.2, slow_time=1)
    init = make_initial(model, packet, reduced)
    assert init.rows.shape[0] == 2
    assert init.direction == "periodic"
    grid = run_full(model, init, packet.m_steps)
    assert grid.boundary == "periodic"
    assert grid.max_residual(model) < 1e-12
