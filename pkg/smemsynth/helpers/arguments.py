import argparse

from smemsynth.pa import BOUNDARIES

from .run_config import parse_bounds


def add_library_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lib", help="BA+ library JSON, the default library when omitted")
    parser.add_argument("--tech", help="tech JSON overriding the library's tech block")


def add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--seed", type=int, default=0, help="seed of every random choice (default: 0)")


def add_explore_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ar-tol", dest="ar_tol", type=float, help="aspect-ratio tolerance override")
    parser.add_argument("--bounds", type=parse_bounds, help="upper limits R,C,K,M")


def add_boundary_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--boundary", choices=BOUNDARIES, default="wrap", help="window behavior at the image edge")
