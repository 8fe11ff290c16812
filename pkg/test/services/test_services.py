import math

import pytest

from core.exception import DomainException, InadmissibleException, RealityException
from repositories import ArtifactRepository
from schemas.config import RunConfig
from services import (
    AdmissibleService,
    CoefficientService,
    DerivationService,
    DispersionService,
    SimulationService,
    ValidationService,
)


def _config(output_dir, kind="mkdv", params=None, **sections) -> RunConfig:
    data = {
        "model": {"kind": kind, "params": params if params is not None else {"p": "2", "q": "1"}},
        "carrier": {"cos_k": "0", "M2": "4"},
        "output": {"directory": str(output_dir)},
    }
    data.update(sections)
    return RunConfig.from_mapping(data)


def test_dispersion_vkvm_alpha_one_has_omega_equal_k(output_dir):
    config = _config(output_dir, "vkvm", {"alpha": "1"}, sweep={"k_min": 0.1, "k_max": 3.0, "points": 30})
    summary = DispersionService(config).execute()
    assert summary["rows"] == 30
    assert summary["reality_violations"] == 0

    frame = ArtifactRepository(output_dir).read_csv("dispersion.csv")
    assert list(frame.columns) == ["k", "omega", "group_velocity", "omega_modulus", "reality"]
    assert (frame["omega"] - frame["k"]).abs().max() < 1e-12
    assert (frame["omega_modulus"] - 1).abs().max() < 1e-13


def test_dispersion_flags_nikdv_reality_violations(output_dir):
    config = _config(output_dir, "nikdv", {"alpha": "2", "beta": "1"},
                     sweep={"k_min": 0.2, "k_max": 2.9, "points": 28})
    summary = DispersionService(config).execute()
    frame = ArtifactRepository(output_dir).read_csv("dispersion.csv")
    violated = frame[frame["reality"] == "violated"]
    assert summary["reality_violations"] == len(violated) > 0
    for k in violated["k"]:
        assert 2 * math.sin(k) ** 3 > 1


def test_admissible_contains_benchmark_carrier(output_dir):
    config = _config(output_dir, admissible={"M2_max": 4, "cosk_denominator_max": 1})
    summary = AdmissibleService(config).execute()
    assert summary["admissible"] == 2

    repo = ArtifactRepository(output_dir)
    rows = {(str(r.cos_k), int(r.M1), int(r.M2)) for r in repo.read_csv("admissible.csv").itertuples()}
    assert ("0", -5, 4) in rows
    regions = repo.read_csv("regions.csv")
    assert set(regions["case"]) == {"(1,inf)", "(0,1)", "(-1,0)", "(-inf,-1)"}


def test_admissible_empty_bounds_give_empty_table(output_dir):
    config = _config(output_dir, admissible={"M2_max": 0, "cosk_denominator_max": 0})
    summary = AdmissibleService(config).execute()
    assert summary["admissible"] == 0
    assert ArtifactRepository(output_dir).read_csv("admissible.csv").empty


def test_coefficients_at_mkdv_benchmark(output_dir):
    summary = CoefficientService(_config(output_dir)).execute()
    assert summary["C3"] == pytest.approx([0.24, 0.0], abs=1e-13)
    assert summary["C1"] == pytest.approx([-1.5, -0.5], abs=1e-13)
    assert summary["C2"] == pytest.approx([0.0, 2.0], abs=1e-13)

    report = ArtifactRepository(output_dir).read_json("coefficients.json")
    assert report["continuum_coeff"]["re"] == pytest.approx(-6.0, abs=1e-12)
    assert report["M1"] == "-5"
    assert report["source"] == "closed_form"
    assert report["C3_evolution"]["re"] == pytest.approx(0.48, abs=1e-13)
    assert report["S_rho"] == pytest.approx(abs(complex(report["S"]["re"], report["S"]["im"])), rel=1e-12)
    assert "manifest.json" in summary["files"]


def test_coefficient_sweep_over_admissible_carriers(output_dir):
    config = _config(output_dir, admissible={"M2_max": 4, "cosk_denominator_max": 1, "coefficient_sweep": True})
    summary = CoefficientService(config).execute()
    assert summary["sweep_rows"] == 2
    frame = ArtifactRepository(output_dir).read_csv("coefficient_sweep.csv")
    assert frame["C3_im"].abs().max() < 1e-13


def test_coefficients_reject_inadmissible_M2(output_dir):
    config = _config(output_dir, carrier={"cos_k": "0", "M2": "3"})
    with pytest.raises(InadmissibleException):
        CoefficientService(config).execute()
    assert not (output_dir / "manifest.json").exists()


def test_hietarinta_off_reality_condition_fails_validation(output_dir):
    config = _config(output_dir, "hietarinta", {"e1": "2", "e2": "1", "o1": "3", "o2": "1"})
    with pytest.raises(RealityException):
        CoefficientService(config).execute()


def test_derive_matches_closed_form(output_dir):
    summary = DerivationService(_config(output_dir, derive={"export_equations": True})).execute()
    assert summary["C3"] == pytest.approx([0.24, 0.0], abs=1e-10)
    assert summary["closed_form_max_deviation"] < 1e-10

    report = ArtifactRepository(output_dir).read_json("derivation.json")
    assert report["coefficients"]["source"] == "engine"
    orders = {(eq["order"], eq["harmonic"]) for eq in report["equations"]}
    assert (1, 1) in orders and (3, 1) in orders


def test_derive_nikdv_cannot_be_verified(output_dir):
    config = _config(output_dir, "nikdv", {"alpha": "1/2", "beta": "1"},
                     carrier={"cos_k": "1/2", "M2": "1", "derivation_only": True}, derive={"verify": True})
    with pytest.raises(DomainException):
        DerivationService(config).execute()


def test_simulate_writes_envelopes_and_grid(output_dir):
    config = _config(output_dir, simulation={"eps_list": ["1/8"], "slow_time": 1, "dump_grid": True})
    summary = SimulationService(config).execute()
    assert summary["N"] == 8
    assert summary["rows"] == 65
    assert summary["max_residual"] < 1e-12
    assert math.isfinite(summary["error"])

    repo = ArtifactRepository(output_dir)
    envelope = repo.read_csv("envelope.csv")
    assert set(envelope["source"]) == {"demodulated", "semicontinuous"}
    assert set(envelope["m2"]) == {0, 1}
    grid = repo.read_grid("field.latg")
    assert grid.rows == 65
    assert set(repo.read_manifest().model_dump()["config"]["simulation"]["eps_list"]) == {"1/8"}


def test_strict_slow_lattice_needs_divisible_N(output_dir):
    config = _config(output_dir, simulation={"eps_list": ["1/8"], "strict_slow_lattice": True})
    with pytest.raises(DomainException):
        ValidationService(config).execute()


def test_validate_writes_convergence_table(output_dir):
    config = _config(output_dir, simulation={"eps_list": ["1/8", "1/16"], "slow_time": 5})
    summary = ValidationService(config).execute()
    assert len(summary["errors"]) == 2
    assert summary["errors"][1] < 0.2
    assert summary["ratios"][0] is None
    assert summary["ratios"][1] >= 1.5
    assert summary["monotone"]

    repo = ArtifactRepository(output_dir)
    table = repo.read_csv("convergence.csv")
    assert list(table["N"]) == [8, 16]
    report = repo.read_json("convergence.json")
    assert report["M1"] == "-5"
    assert report["reference"] == "semicontinuous"
    written = {entry.path for entry in repo.read_manifest().files}
    assert {"convergence.csv", "convergence.json"} <= written
