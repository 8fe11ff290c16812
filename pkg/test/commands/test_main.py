import json

import pytest

from commands import discover_commands
from main import build_parser, main

BENCHMARK = ["--model", "mkdv", "--param", "p=2", "--param", "q=1", "--cos-k", "0"]


def test_every_command_is_discovered():
    names = {name for name, _, _ in discover_commands()}
    assert names == {"admissible", "coefficients", "derive", "dispersion", "simulate", "validate"}


def test_parser_lists_subcommands():
    help_text = build_parser().format_help()
    assert "latticereduce" in help_text


def test_coefficients_success_prints_json(output_dir, capsys):
    code = main(["coefficients", *BENCHMARK, "--M2", "4", "--output", str(output_dir)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["C3"] == pytest.approx([0.24, 0.0], abs=1e-13)
    assert payload["M1"] == "-5"
    assert (output_dir / "coefficients.json").exists()


def test_inadmissible_input_exits_3(output_dir):
    assert main(["coefficients", *BENCHMARK, "--M2", "3", "--output", str(output_dir)]) == 3


def test_degenerate_carrier_exits_3(output_dir):
    args = ["coefficients", "--model", "mkdv", "--param", "p=2", "--param", "q=1", "--cos-k", "1",
            "--output", str(output_dir)]
    assert main(args) == 3


def test_missing_model_exits_2(output_dir):
    assert main(["dispersion", "--output", str(output_dir)]) == 2


def test_bad_config_file_exits_2(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[model]\nkind = 'mkdv'\nunknown = 1\n", encoding="utf-8")
    assert main(["dispersion", "--config", str(path)]) == 2


def test_config_file_with_flag_override(tmp_path, capsys):
    path = tmp_path / "run.toml"
    path.write_text(
        "[model]\nkind = 'vkvm'\nparams = { alpha = '1' }\n\n[sweep]\npoints = 4\n",
        encoding="utf-8",
    )
    code = main(["dispersion", "--config", str(path), "--points", "6", "--output", str(tmp_path / "out")])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["rows"] == 6


def test_manifest_rerun_is_bit_identical(tmp_path):
    first = tmp_path / "first"
    assert main(["admissible", "--model", "mkdv", "--param", "p=2", "--param", "q=1",
                 "--M2-max", "4", "--cosk-denominator-max", "3", "--output", str(first)]) == 0
    manifest = json.loads((first / "manifest.json").read_text(encoding="utf-8"))

    rerun = tmp_path / "rerun.json"
    config = dict(manifest["config"])
    config["output"] = {"directory": str(tmp_path / "second"), "prefix": ""}
    rerun.write_text(json.dumps(config), encoding="utf-8")
    assert main(["admissible", "--config", str(rerun)]) == 0

    for name in ("admissible.csv", "regions.csv"):
        assert (first / name).read_bytes() == (tmp_path / "second" / name).read_bytes()
