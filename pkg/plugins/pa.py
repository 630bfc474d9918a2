import argparse

from smemsynth.base import VerificationFailure
from smemsynth.decorators import command_handler
from smemsynth.helpers import RunConfig, add_boundary_arg, add_library_args, add_output_args
from smemsynth.netlist import emit_hdl, write_netlist
from smemsynth.pa import (
    PAWindowSpec,
    compare_pa_ppa,
    generate_pa_sm,
    generate_pa_tm,
    sweep_windows,
    write_comparison,
    write_sweep,
)
from smemsynth.sim import verify_pa


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("pa", help="generate, compare and verify SM and TM parallel-access memories")
    parser.add_argument("--spec", help="geometry JSON (m, n, a, b, optional pixel_bits)")
    parser.add_argument("--sweep", action="store_true", help="also compare 2x2, 4x2, 2x4 and 4x4 windows")
    parser.add_argument("--no-verify", dest="no_verify", action="store_true", help="skip the origin sweep")
    add_boundary_arg(parser)
    add_library_args(parser)
    add_output_args(parser)
    parser.set_defaults(handler=cmd_pa)


@command_handler(requires=("spec",))
def cmd_pa(run: RunConfig) -> None:
    lib, tech = run.load_library()
    spec = run.load_model(run.spec, PAWindowSpec)
    designs = [generate_pa_sm(spec, lib, tech, run.boundary), generate_pa_tm(spec, lib, tech, run.boundary)]
    for ir in designs:
        write_netlist(ir, run.out_path(f"{ir.top}.net"))
        emit_hdl(ir, run.out_path(f"{ir.top}.v"))

    write_comparison(compare_pa_ppa(spec, lib, tech), run.out_path("pa_compare.csv"))
    if run.options.get("sweep"):
        write_sweep(sweep_windows(spec.m, spec.n, lib, tech, pixel_bits=spec.pixel_bits), run.out_path("pa_sweep.csv"))
    if run.options.get("no_verify"):
        return

    reports = [verify_pa(ir, seed=run.seed) for ir in designs]
    lines = [f"{report.design} origins={report.origins} {report.summary()}" for report in reports]
    run.out_path("verify.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    failed = [report for report in reports if not report.passed]
    if failed:
        raise VerificationFailure("; ".join(f"{report.design} {report.summary()}" for report in failed))
