"""On-disk dataset layout, manifest checksums and fold splits."""

import json
import random
from dataclasses import replace

import pytest

from rpmgen.answers import build_answer_set
from rpmgen.dataset import (
    DatasetCorruptionError,
    fold_split,
    read_dataset,
    read_record,
    split_folds,
    write_dataset,
)
from rpmgen.grammar import CONFIGURATIONS, ConfigName
from rpmgen.matrix import generate_matrix
from rpmgen.solver import score_candidate


def some_problem(name, seed, problem_id, fold):
    cfg = CONFIGURATIONS[name]
    cap = 4 * len(cfg.components)
    while True:
        draft = generate_matrix(cfg, seed)
        if score_candidate(draft.context, draft.correct).satisfied == cap:
            return build_answer_set(draft, random.Random(seed),
                                    problem_id=problem_id, fold=fold)
        seed += 1


@pytest.fixture(scope="module")
def problems():
    return [
        some_problem(ConfigName.CENTER, 0, "center_0", 0),
        some_problem(ConfigName.CENTER, 50, "center_1", 1),
        some_problem(ConfigName.GRID_2X2, 0, "grid_0", 6),
        some_problem(ConfigName.LEFT_RIGHT, 0, "lr_0", 8),
    ]


def test_split_helpers():
    assert split_folds("train") == (0, 1, 2, 3, 4, 5)
    assert split_folds("val") == (6, 7)
    assert split_folds("test") == (8, 9)
    for fold in range(10):
        split = fold_split(fold)
        assert fold in split_folds(split)
    with pytest.raises(ValueError):
        split_folds("dev")
    with pytest.raises(ValueError):
        fold_split(10)


def test_write_layout_and_manifest(tmp_path, problems):
    manifest = write_dataset(problems, tmp_path)
    assert (tmp_path / "manifest").exists()
    on_disk = json.loads((tmp_path / "manifest").read_text())
    assert on_disk == manifest
    assert manifest["counts"] == {"Center": 2, "Grid2x2": 1, "LeftRight": 1}
    assert manifest["total"] == 4

    record = tmp_path / "Center" / "center_0.record"
    assert record.exists()
    for k in range(16):
        assert (tmp_path / "Center" / ("center_0_%d.png" % k)).exists()
    # every file except the manifest itself is checksummed
    files = {p.relative_to(tmp_path).as_posix()
             for p in tmp_path.rglob("*") if p.is_file()}
    files.discard("manifest")
    assert set(manifest["checksums"]) == files


def test_round_trip(tmp_path, problems):
    write_dataset(problems, tmp_path)
    back = read_dataset(tmp_path)
    assert back == problems


def test_read_single_record(tmp_path, problems):
    write_dataset(problems, tmp_path)
    problem = read_record(tmp_path / "Grid2x2" / "grid_0.record")
    assert problem == problems[2]


def test_png_panels_decode(tmp_path, problems):
    import numpy as np
    from PIL import Image

    from rpmgen.render import render_panel

    write_dataset(problems, tmp_path)
    img = Image.open(tmp_path / "Center" / "center_0_3.png")
    assert img.mode == "L"
    assert img.size == (160, 160)
    want = render_panel(problems[0].context[3]).pixels
    assert np.array_equal(np.asarray(img), want)


def test_corrupted_image_detected(tmp_path, problems):
    write_dataset(problems, tmp_path)
    victim = tmp_path / "Center" / "center_0_5.png"
    data = bytearray(victim.read_bytes())
    data[-1] ^= 0xFF
    victim.write_bytes(bytes(data))
    with pytest.raises(DatasetCorruptionError):
        read_dataset(tmp_path)


def test_missing_file_detected(tmp_path, problems):
    write_dataset(problems, tmp_path)
    (tmp_path / "LeftRight" / "lr_0.record").unlink()
    with pytest.raises(DatasetCorruptionError):
        read_dataset(tmp_path)


def test_tampered_record_detected(tmp_path, problems):
    write_dataset(problems, tmp_path)
    victim = tmp_path / "Center" / "center_1.record"
    blob = json.loads(victim.read_text())
    blob["target"] = (blob["target"] + 1) % 8
    victim.write_text(json.dumps(blob))
    with pytest.raises(DatasetCorruptionError):
        read_dataset(tmp_path)


def test_fold_proportions_exact_for_multiples_of_ten(problems):
    folds = [replace(problems[0], fold=i, id="p%d" % i) for i in range(10)]
    train = [p for p in folds if fold_split(p.fold) == "train"]
    val = [p for p in folds if fold_split(p.fold) == "val"]
    test = [p for p in folds if fold_split(p.fold) == "test"]
    assert (len(train), len(val), len(test)) == (6, 2, 2)


def test_missing_manifest(tmp_path):
    with pytest.raises(DatasetCorruptionError):
        read_dataset(tmp_path)
