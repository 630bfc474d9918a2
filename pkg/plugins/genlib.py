import argparse
from typing import Tuple

from smemsynth.baplus import (
    DEFAULT_TECH,
    default_library,
    normalized_library,
    read_tech,
    save_library,
    write_normalized_library,
)
from smemsynth.baplus.library import DEFAULT_DIMENSIONS
from smemsynth.decorators import command_handler
from smemsynth.helpers import RunConfig, add_output_args


def dimensions(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma-separated list of integers")


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("genlib", help="generate a BA+ macro library")
    parser.add_argument("--tech", help="tech JSON, the shipped coefficients when omitted")
    parser.add_argument("--entries", type=dimensions, default=DEFAULT_DIMENSIONS, help="values of B, e.g. 8,16,32")
    parser.add_argument("--widths", type=dimensions, default=DEFAULT_DIMENSIONS, help="values of W, e.g. 8,16,32")
    add_output_args(parser)
    parser.set_defaults(handler=cmd_genlib)


@command_handler()
def cmd_genlib(run: RunConfig) -> None:
    tech = read_tech(run.tech) if run.tech else DEFAULT_TECH
    lib = default_library(tech, run.options["entries"], run.options["widths"])
    save_library(lib, run.out_path("library.json"))
    write_normalized_library(normalized_library(lib), run.out_path("library_norm.csv"))
