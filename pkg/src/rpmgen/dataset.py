"""Dataset directory layout with checksummed manifest.

Layout: one subdirectory per figure configuration holding `<id>.record`
documents and their 16 panel PNGs (`<id>_<0..15>.png`, context panels first).
A `manifest` file at the root lists counts, per-problem metadata and sha256
checksums of every file; it is written last so a complete manifest implies a
complete write.
"""

import hashlib
import json
from pathlib import Path
from typing import Dict, List, Sequence

from .answers import Problem
from .render import png_bytes, render_panel
from .serialization import problem_from_record, problem_to_record, record_text

MANIFEST_SCHEMA = 1
_SPLITS = {"train": (0, 1, 2, 3, 4, 5), "val": (6, 7), "test": (8, 9)}


class DatasetCorruptionError(RuntimeError):
    """Manifest missing, file missing, or checksum mismatch."""


def split_folds(split: str):
    try:
        return _SPLITS[split]
    except KeyError:
        raise ValueError("unknown split %r" % split) from None


def fold_split(fold: int) -> str:
    for split, folds in _SPLITS.items():
        if fold in folds:
            return split
    raise ValueError("fold must lie in 0..9, got %r" % fold)


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_dataset(problems: Sequence[Problem], out_dir,
                  master_seed=None) -> Dict:
    """Write records and panel images, then the manifest. Returns the
    manifest dictionary as written."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    counts: Dict[str, int] = {}
    entries: List[Dict] = []
    checksums: Dict[str, str] = {}

    for problem in problems:
        config_name = problem.config.name.value
        config_dir = root / config_name
        config_dir.mkdir(exist_ok=True)
        counts[config_name] = counts.get(config_name, 0) + 1

        rel_record = "%s/%s.record" % (config_name, problem.id)
        data = record_text(problem_to_record(problem)).encode()
        (root / rel_record).write_bytes(data)
        checksums[rel_record] = _sha256(data)

        images = []
        panels = problem.context + problem.candidates
        for k, panel in enumerate(panels):
            rel_png = "%s/%s_%d.png" % (config_name, problem.id, k)
            blob = png_bytes(render_panel(panel))
            (root / rel_png).write_bytes(blob)
            checksums[rel_png] = _sha256(blob)
            images.append(rel_png)
        entries.append({"id": problem.id, "config": config_name,
                        "fold": problem.fold, "seed": problem.seed,
                        "record": rel_record, "images": images})

    rules = sum(len(g.slots) for p in problems for g in p.rule_groups)
    manifest = {"schema": MANIFEST_SCHEMA, "total": len(problems),
                "counts": counts, "problems": entries,
                "avg_rules": rules / len(problems) if problems else 0.0,
                "checksums": checksums}
    if master_seed is not None:
        manifest["seed"] = master_seed
    (root / "manifest").write_text(
        json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    return manifest


def read_record(path) -> Problem:
    return problem_from_record(json.loads(Path(path).read_text()))


def read_manifest(root) -> Dict:
    path = Path(root) / "manifest"
    if not path.exists():
        raise DatasetCorruptionError("no manifest in %s" % root)
    manifest = json.loads(path.read_text())
    if manifest.get("schema") != MANIFEST_SCHEMA:
        raise DatasetCorruptionError(
            "unsupported manifest schema %r" % manifest.get("schema"))
    return manifest


def read_dataset(root) -> List[Problem]:
    """Load every problem, verifying all checksums first."""
    base = Path(root)
    manifest = read_manifest(base)
    for rel, want in manifest["checksums"].items():
        path = base / rel
        if not path.exists():
            raise DatasetCorruptionError("missing file %s" % rel)
        if _sha256(path.read_bytes()) != want:
            raise DatasetCorruptionError("checksum mismatch for %s" % rel)
    return [read_record(base / entry["record"])
            for entry in manifest["problems"]]
