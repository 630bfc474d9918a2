import argparse
import json
from dataclasses import asdict

from smemsynth.decorators import command_handler
from smemsynth.explorer import Exploration, UserSpec, explore, write_plot_data, write_report
from smemsynth.helpers import RunConfig, add_explore_args, add_library_args, add_output_args


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("explore", help="enumerate, evaluate and select 1R-1W configurations")
    parser.add_argument("--spec", help="memory request JSON (words, bits, optional targets)")
    add_library_args(parser)
    add_explore_args(parser)
    add_output_args(parser)
    parser.set_defaults(handler=cmd_explore)


def chosen_document(result: Exploration) -> dict:
    if result.selection is None:
        return {"config": None}
    selection = result.selection
    return {
        "config": selection.config.model_dump(),
        "label": selection.config.label,
        "feasible": selection.feasible,
        "violation": round(selection.violation, 6),
        "estimate": {key: round(value, 6) for key, value in asdict(selection.estimate).items()},
    }


@command_handler(requires=("spec",))
def cmd_explore(run: RunConfig) -> None:
    lib, tech = run.load_library()
    spec = run.load_model(run.spec, UserSpec, aspect_ratio_tol=run.ar_tol, bounds=run.bounds)
    result = explore(spec, lib, tech)
    write_report(result.rows, run.out_path("explore.csv"))
    write_plot_data(result.rows, run.out_path("plot.dat"))
    text = json.dumps(chosen_document(result), indent=2, sort_keys=True)
    run.out_path("chosen.json").write_text(text + "\n", encoding="utf-8")
