import json

import numpy as np
import pytest

from core.exception import ArtifactException
from models import FieldGrid
from repositories import MANIFEST_NAME, ArtifactRepository
from schemas.report import Manifest
from utils.str import md5_bytes


def _manifest() -> Manifest:
    return Manifest(
        schema_version="1",
        app_name="latticereduce",
        app_version="0.1.0",
        command="dispersion",
        config={"model": {"kind": "vkvm"}},
        seed=11,
        numerics={},
    )


def test_csv_has_schema_line_and_header(output_dir):
    repo = ArtifactRepository(output_dir, schema_version="3")
    path = repo.write_csv("table.csv", [{"k": 0.5, "omega": -0.25}, {"k": 1.0, "omega": -0.5}])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# schema_version=3"
    assert lines[1] == "k,omega"
    assert lines[2] == "0.5,-0.25"

    frame = repo.read_csv("table.csv")
    assert list(frame.columns) == ["k", "omega"]
    assert frame["omega"].tolist() == [-0.25, -0.5]


def test_empty_table_keeps_its_header(output_dir):
    repo = ArtifactRepository(output_dir)
    path = repo.write_csv("empty.csv", [], columns=["cos_k", "M1", "M2"])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[1] == "cos_k,M1,M2"
    assert len(lines) == 2


def test_csv_without_schema_line_is_rejected(output_dir):
    output_dir.mkdir(parents=True)
    (output_dir / "raw.csv").write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(ArtifactException):
        ArtifactRepository(output_dir).read_csv("raw.csv")


def test_json_is_sorted_and_versioned(output_dir):
    repo = ArtifactRepository(output_dir, schema_version="2")
    path = repo.write_json("report.json", {"b": 1, "a": {"z": 0, "y": 1}})
    text = path.read_text(encoding="utf-8")
    assert text.index('"a"') < text.index('"b"') < text.index('"schema_version"')
    assert json.loads(text)["schema_version"] == "2"


def test_grid_dump_round_trip(output_dir):
    repo = ArtifactRepository(output_dir)
    values = np.arange(12, dtype=float).reshape(3, 4) / 7
    repo.write_grid("field.latg", FieldGrid(values=values, n0=-2, m0=5))
    blob = (output_dir / "field.latg").read_bytes()
    assert blob[:4] == b"LATG"
    loaded = repo.read_grid("field.latg")
    assert loaded.n0 == -2 and loaded.m0 == 5
    np.testing.assert_array_equal(loaded.values, values)


def test_manifest_lists_digests_of_earlier_files(output_dir):
    repo = ArtifactRepository(output_dir, prefix="demo_")
    csv_path = repo.write_csv("a.csv", [{"x": 1}])
    repo.write_json("b.json", {"y": 2})
    repo.write_manifest(_manifest())

    manifest = repo.read_manifest()
    names = [entry.path for entry in manifest.files]
    assert names == ["demo_a.csv", "demo_b.json"]
    assert manifest.files[0].md5 == md5_bytes(csv_path.read_bytes())
    assert (output_dir / f"demo_{MANIFEST_NAME}").exists()


def test_writes_are_deterministic(tmp_path):
    rows = [{"k": 0.1 * i, "omega": -0.05 * i} for i in range(5)]
    first = ArtifactRepository(tmp_path / "one")
    second = ArtifactRepository(tmp_path / "two")
    first.write_csv("t.csv", rows)
    second.write_csv("t.csv", rows)
    assert first.written == second.written


def test_unwritable_directory_raises(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(ArtifactException):
        ArtifactRepository(blocker / "sub").write_json("r.json", {})
