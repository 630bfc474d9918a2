import argparse

from smemsynth.base import UsageError
from smemsynth.decorators import command_handler
from smemsynth.helpers import RunConfig, add_library_args, add_output_args
from smemsynth.netlist import NetlistIR, read_netlist
from smemsynth.sim import (
    SimTrace,
    pa_spec_of,
    random_pa_trace,
    random_sram_trace,
    read_trace,
    simulate,
    write_result,
    write_trace,
)
from smemsynth.utils import logger


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("sim", help="simulate a netlist on a trace")
    parser.add_argument("--netlist", help="native netlist file")
    parser.add_argument("--trace", help="trace file")
    parser.add_argument("--ops", type=int, help="simulate a seeded random trace of this many cycles instead")
    add_library_args(parser)
    add_output_args(parser)
    parser.set_defaults(handler=cmd_sim)


def random_trace(ir: NetlistIR, ops: int, seed: int) -> SimTrace:
    if ir.attrs.get("design") == "sram":
        return random_sram_trace(ir.attr_int("words"), ir.attr_int("bits"), ops, seed)
    spec = pa_spec_of(ir)
    return random_pa_trace(spec.width, spec.height, spec.pixel_bits, ops, seed)


@command_handler(requires=("netlist",))
def cmd_sim(run: RunConfig) -> None:
    ir = read_netlist(run.netlist)
    ops = run.options.get("ops")
    if run.trace:
        trace = read_trace(run.trace)
    elif ops is not None:
        trace = random_trace(ir, ops, run.seed)
        write_trace(trace, run.out_path("trace.txt"))
    else:
        raise UsageError("sim: --trace or --ops is required")

    lib, tech = run.load_library()
    result = simulate(ir, trace, lib, tech)
    write_result(result, run.out_path("sim.out"))
    logger.info(f"Sim: {len(result.outputs)} reads, {result.e_total:.3f} fJ, {result.conflicts} conflicts")
