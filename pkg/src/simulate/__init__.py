"""
Far-field simulation.
Packet initial data, full-lattice runs, demodulation and reduced evolutions.
"""
from .demodulate import averaging_width, demodulate, envelope_row, second_harmonic_ratio, slow_sites
from .envelope import EnvelopeHistory, reduced_increment, rk4, run_reduced, run_semicontinuous
from .far_field import ConvergenceReport, ConvergenceRow, far_field_error, reduced_reference, validate_far_field
from .full import run_full
from .mean_field import bond_density, mean_field
from .packet import InitialData, PacketSpec, ansatz_field, make_initial, radiation_speed

__all__ = [
    "PacketSpec",
    "InitialData",
    "ansatz_field",
    "make_initial",
    "radiation_speed",
    "run_full",
    "EnvelopeHistory",
    "reduced_increment",
    "rk4",
    "run_reduced",
    "run_semicontinuous",
    "averaging_width",
    "demodulate",
    "envelope_row",
    "second_harmonic_ratio",
    "slow_sites",
    "bond_density",
    "mean_field",
    "ConvergenceReport",
    "ConvergenceRow",
    "far_field_error",
    "reduced_reference",
    "validate_far_field",
]
