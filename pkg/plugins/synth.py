import argparse
from typing import Optional, Tuple

from smemsynth.base import ConstraintError, UsageError, VerificationFailure
from smemsynth.decorators import command_handler
from smemsynth.explorer import MemoryConfig, UserSpec, explore, periphery_logic_area
from smemsynth.floorplan import check_floorplan, realize, write_floorplan, write_floorplan_csv
from smemsynth.helpers import RunConfig, add_explore_args, add_library_args, add_output_args
from smemsynth.netlist import check_wellformed, emit_hdl, generate_sram, write_netlist
from smemsynth.utils import logger


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("synth", help="generate netlist, HDL and floorplan of a configuration")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="configuration JSON (variant, R, C, K, M)")
    source.add_argument("--spec", help="memory request JSON, synthesizes the selected configuration")
    parser.add_argument("--transpose", action="store_true", help="mirror the floorplan across the diagonal")
    add_library_args(parser)
    add_explore_args(parser)
    add_output_args(parser)
    parser.set_defaults(handler=cmd_synth)


def _choose(run: RunConfig, lib, tech) -> Tuple[MemoryConfig, Optional[float], float]:
    if run.config:
        return run.load_model(run.config, MemoryConfig), None, run.ar_tol or 0.25
    if not run.spec:
        raise UsageError("synth: --config or --spec is required")
    spec = run.load_model(run.spec, UserSpec, aspect_ratio_tol=run.ar_tol, bounds=run.bounds)
    selection = explore(spec, lib, tech).selection
    if selection is None:
        raise ConstraintError(f"no configuration implements {spec.words}x{spec.bits}")
    return selection.config, spec.aspect_ratio_target, spec.aspect_ratio_tol


@command_handler()
def cmd_synth(run: RunConfig) -> None:
    lib, tech = run.load_library()
    cfg, ar_target, ar_tol = _choose(run, lib, tech)

    ir = generate_sram(cfg, lib, tech)
    violations = check_wellformed(ir)
    if violations:
        raise VerificationFailure(f"{cfg.label}: {len(violations)} netlist violations, first {violations[0]}")
    write_netlist(ir, run.out_path("sram.net"))
    emit_hdl(ir, run.out_path("sram.v"))

    floorplan = realize(
        cfg,
        lib,
        tech,
        logic_area=periphery_logic_area(cfg, lib, tech),
        ar_target=ar_target,
        ar_tol=ar_tol,
        transpose=run.options.get("transpose", False),
    )
    problems = check_floorplan(floorplan, cfg)
    if problems:
        raise VerificationFailure(f"{cfg.label}: {len(problems)} floorplan violations, first {problems[0]}")
    write_floorplan(floorplan, run.out_path("floorplan.txt"))
    write_floorplan_csv(floorplan, run.out_path("floorplan.csv"))
    logger.info(f"Synth: {cfg.label} {floorplan.die_w}x{floorplan.die_h} nm")
