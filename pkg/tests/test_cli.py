"""Command-line interface: gen, validate, solve, stats, preview."""

import json

import pytest

from rpmgen.cli import main


@pytest.fixture()
def dataset(tmp_path):
    root = tmp_path / "data"
    rc = main(["gen", "--out", str(root), "--per-config", "2",
               "--seed", "21"])
    assert rc == 0
    return root


def test_gen_writes_counts_and_manifest(tmp_path, capsys):
    root = tmp_path / "d"
    rc = main(["gen", "--out", str(root), "--per-config", "1",
               "--seed", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "7 problems" in out
    manifest = json.loads((root / "manifest").read_text())
    assert manifest["total"] == 7
    assert set(manifest["counts"].values()) == {1}
    assert manifest["seed"] == 3
    assert abs(manifest["avg_rules"] - 44 / 7) < 1e-9


def test_gen_uses_env_dataset_root(tmp_path, monkeypatch, capsys):
    root = tmp_path / "from_env"
    monkeypatch.setenv("RAVEN_DATA", str(root))
    rc = main(["gen", "--per-config", "1", "--seed", "3",
               "--configs", "Center"])
    assert rc == 0
    assert (root / "manifest").exists()


def test_gen_configs_filter(tmp_path):
    root = tmp_path / "d"
    rc = main(["gen", "--out", str(root), "--per-config", "2", "--seed", "5",
               "--configs", "Center,Grid3x3"])
    assert rc == 0
    manifest = json.loads((root / "manifest").read_text())
    assert manifest["counts"] == {"Center": 2, "Grid3x3": 2}


def test_gen_rejects_unknown_config(tmp_path):
    rc = main(["gen", "--out", str(tmp_path / "d"), "--per-config", "1",
               "--seed", "1", "--configs", "Blob"])
    assert rc == 1


def test_gen_twice_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["gen", "--out", str(a), "--per-config", "1",
                 "--seed", "9"]) == 0
    assert main(["gen", "--out", str(b), "--per-config", "1",
                 "--seed", "9"]) == 0
    ma = json.loads((a / "manifest").read_text())
    mb = json.loads((b / "manifest").read_text())
    assert ma["checksums"] == mb["checksums"]


def test_stats_reports_avg_rules(dataset, capsys):
    rc = main(["stats", "--dataset", str(dataset)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "problems 14" in out
    assert "trees 224" in out
    assert "avg_rules 6.2857" in out


def test_solve_reports_full_accuracy(dataset, capsys):
    rc = main(["solve", "--dataset", str(dataset)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "overall" in out
    assert "2x2Grid" in out and "O-IG" in out
    row = [tok for tok in out.split() if tok.replace(".", "").isdigit()]
    assert row.count("100.00") == 8


def test_solve_split_with_no_problems(dataset, capsys):
    # per-config 2 puts everything in folds 0 and 1 (train)
    rc = main(["solve", "--dataset", str(dataset), "--split", "test"])
    assert rc == 1


def test_validate_passes_on_fresh_dataset(dataset, capsys):
    rc = main(["validate", "--dataset", str(dataset)])
    assert rc == 0
    assert "ok" in capsys.readouterr().out


def test_validate_detects_corruption(dataset, capsys):
    victim = next(dataset.glob("Center/*.png"))
    data = bytearray(victim.read_bytes())
    data[-1] ^= 0xFF
    victim.write_bytes(bytes(data))
    rc = main(["validate", "--dataset", str(dataset)])
    assert rc == 1
    assert "checksum" in capsys.readouterr().err


def test_preview_renders_sheet(dataset, tmp_path):
    from PIL import Image

    out = tmp_path / "sheet.png"
    rc = main(["preview", "--dataset", str(dataset), "--id", "center_0000",
               "--out", str(out)])
    assert rc == 0
    img = Image.open(out)
    assert img.mode == "L"
    assert img.size[0] > 600


def test_preview_unknown_id(dataset, tmp_path):
    rc = main(["preview", "--dataset", str(dataset), "--id", "nope",
               "--out", str(tmp_path / "x.png")])
    assert rc == 1


def test_missing_dataset_everywhere(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv("RAVEN_DATA", raising=False)
    rc = main(["stats"])
    assert rc == 1
    assert "RAVEN_DATA" in capsys.readouterr().err


def test_nonexistent_dataset_path(tmp_path):
    rc = main(["solve", "--dataset", str(tmp_path / "missing")])
    assert rc == 1
