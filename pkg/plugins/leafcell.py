import argparse
from pathlib import Path
from typing import List

from smemsynth.decorators import command_handler
from smemsynth.helpers import RunConfig, add_output_args
from smemsynth.leafcell import check_restrictions, metrics_report, read_layout, write_metrics_report


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("leafcell", help="leaf-cell efficiency metrics and restriction checks")
    parser.add_argument("--fixtures", nargs="+", help="layout files or directories of *.layout files")
    parser.add_argument("--layer", default="CA", help="layer whose unique constructs are counted")
    parser.add_argument("--window", type=int, default=5, help="construct window side in pitches")
    add_output_args(parser)
    parser.set_defaults(handler=cmd_leafcell)


def layout_paths(fixtures: List[Path]) -> List[Path]:
    paths: List[Path] = []
    for item in fixtures:
        paths.extend(sorted(item.glob("*.layout")) if item.is_dir() else [item])
    return paths


@command_handler(requires=("fixtures",))
def cmd_leafcell(run: RunConfig) -> None:
    layouts = [read_layout(path) for path in layout_paths(run.fixtures)]
    rows = metrics_report(layouts, run.options["layer"], run.options["window"])
    write_metrics_report(rows, run.out_path("leafcell.csv"))

    lines = [f"{layout.name} {violation}" for layout in layouts for violation in check_restrictions(layout)]
    run.out_path("restrictions.txt").write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
