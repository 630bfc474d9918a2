import argparse

from . import explore, genlib, leafcell, pa, sim, synth

list_available_commands = ["genlib", "explore", "synth", "pa", "sim", "leafcell"]


def register_all(subparsers: argparse._SubParsersAction) -> None:
    for plugin in (genlib, explore, synth, pa, sim, leafcell):
        plugin.register(subparsers)


__all__ = ["list_available_commands", "register_all"]
