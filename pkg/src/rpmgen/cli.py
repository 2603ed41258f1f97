"""Command-line entry points.

Subcommands: gen (build a dataset), validate (re-check integrity and
uniqueness), solve (report solver accuracy per configuration), stats
(dataset statistics), preview (render one problem sheet), serve (HTTP trial
server). The dataset root defaults to $RAVEN_DATA when a flag is omitted.
"""

import argparse
import os
import sys
from pathlib import Path

from .dataset import (
    DatasetCorruptionError,
    fold_split,
    read_dataset,
    read_manifest,
    read_record,
    write_dataset,
)
from .answers import verify_unique
from .generate import generate_dataset, generate_familiarization_set
from .grammar import CONFIG_ORDER, ConfigName
from .render import png_bytes, render_sheet
from .solver import AmbiguityError, solve

SHORT_NAMES = {
    ConfigName.CENTER: "Center",
    ConfigName.GRID_2X2: "2x2Grid",
    ConfigName.GRID_3X3: "3x3Grid",
    ConfigName.LEFT_RIGHT: "L-R",
    ConfigName.UP_DOWN: "U-D",
    ConfigName.OUT_IN_CENTER: "O-IC",
    ConfigName.OUT_IN_GRID: "O-IG",
}


class CliError(RuntimeError):
    pass


def _dataset_root(value) -> Path:
    if value:
        return Path(value)
    env = os.environ.get("RAVEN_DATA")
    if env:
        return Path(env)
    raise CliError("no dataset directory: pass --dataset/--out "
                   "or set RAVEN_DATA")


def _parse_configs(text):
    if not text:
        return CONFIG_ORDER
    names = []
    for raw in text.split(","):
        try:
            names.append(ConfigName(raw.strip()))
        except ValueError:
            raise CliError("unknown configuration %r" % raw.strip()) from None
    return tuple(names)


def cmd_gen(args):
    root = _dataset_root(args.out)
    problems = generate_dataset(args.per_config, args.seed,
                                configs=_parse_configs(args.configs))
    write_dataset(problems, root, master_seed=args.seed)
    print("%d problems -> %s" % (len(problems), root))


def cmd_validate(args):
    root = _dataset_root(args.dataset)
    problems = read_dataset(root)
    for problem in problems:
        if not verify_unique(problem):
            raise CliError("problem %s is not uniquely solvable" % problem.id)
    print("ok %d problems, checksums and uniqueness verified" % len(problems))


def _accuracy_table(problems):
    per = {name: [0, 0] for name in CONFIG_ORDER}
    for problem in problems:
        cell = per[problem.config.name]
        cell[1] += 1
        try:
            chosen = solve(problem.context, problem.candidates).chosen_index
        except AmbiguityError:
            chosen = -1
        cell[0] += int(chosen == problem.target)
    return per


def cmd_solve(args):
    root = _dataset_root(args.dataset)
    problems = read_dataset(root)
    if args.split:
        problems = [p for p in problems if fold_split(p.fold) == args.split]
    if not problems:
        raise CliError("no problems in the requested split")
    per = _accuracy_table(problems)
    names, cells = [], []
    for name in CONFIG_ORDER:
        correct, total = per[name]
        if total:
            names.append(SHORT_NAMES[name])
            cells.append("%.2f" % (100.0 * correct / total))
    correct = sum(c for c, _ in per.values())
    total = sum(t for _, t in per.values())
    names.append("overall")
    cells.append("%.2f" % (100.0 * correct / total))
    width = max(len(n) for n in names) + 2
    print("config   " + "".join(n.ljust(width) for n in names))
    print("accuracy " + "".join(c.ljust(width) for c in cells))


def cmd_stats(args):
    root = _dataset_root(args.dataset)
    problems = read_dataset(root)
    rules = sum(len(g.slots) for p in problems for g in p.rule_groups)
    print("problems %d" % len(problems))
    print("trees %d" % (16 * len(problems)))
    print("avg_rules %.4f" % (rules / len(problems)))
    counts = {}
    for p in problems:
        counts[p.config.name.value] = counts.get(p.config.name.value, 0) + 1
    for name, count in sorted(counts.items()):
        print("%s %d" % (name, count))


def cmd_preview(args):
    root = _dataset_root(args.dataset)
    manifest = read_manifest(root)
    for entry in manifest["problems"]:
        if entry["id"] == args.id:
            problem = read_record(root / entry["record"])
            Path(args.out).write_bytes(png_bytes(render_sheet(problem)))
            print("wrote %s" % args.out)
            return
    raise CliError("no problem with id %r" % args.id)


def cmd_serve(args):
    import uvicorn

    from .server import create_app

    root = _dataset_root(args.dataset)
    problems = read_dataset(root)
    famil = generate_familiarization_set(
        args.familiarization_count, args.seed,
        config_name=_parse_configs(args.familiarization_config)[0])
    app = create_app(problems, famil,
                     test_per_config=args.test_per_config,
                     log_path=root / "responses.jsonl")
    uvicorn.run(app, host=args.host, port=args.port)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rpmgen",
        description="Generate, validate, solve and serve matrix-reasoning "
                    "problem datasets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a dataset")
    p.add_argument("--out", help="output directory (default $RAVEN_DATA)")
    p.add_argument("--per-config", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--configs", help="comma-separated configuration names")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="verify checksums and uniqueness")
    p.add_argument("--dataset")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="report solver accuracy")
    p.add_argument("--dataset")
    p.add_argument("--split", choices=("train", "val", "test"))
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("stats", help="dataset statistics")
    p.add_argument("--dataset")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("preview", help="render one problem sheet to PNG")
    p.add_argument("--dataset")
    p.add_argument("--id", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_preview)

    p = sub.add_parser("serve", help="serve trials over HTTP")
    p.add_argument("--dataset")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--familiarization-config", default="Center")
    p.add_argument("--familiarization-count", type=int, default=10)
    p.add_argument("--test-per-config", type=int, default=2)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CliError, DatasetCorruptionError, RuntimeError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
