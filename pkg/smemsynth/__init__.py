from .baplus import BAPlusMacro, MacroLibrary, TechParams, default_library, generate_variant, read_library
from .base import SMemSynthError
from .explorer import MemoryConfig, UserSpec, enumerate_configs, evaluate_ppa, explore, pareto_front, select_best
from .floorplan import Floorplan, estimate_dimensions, realize
from .leafcell import GridLayout, check_restrictions, count_constructs, read_layout
from .netlist import NetlistIR, check_wellformed, emit_hdl, generate_sram
from .pa import PAWindowSpec, compare_pa_ppa, generate_pa_sm, generate_pa_tm
from .sim import SimTrace, energy_report, simulate, verify_pa
from .utils import config, logger

__version__ = "0.1.0"

__all__ = [
    "BAPlusMacro",
    "Floorplan",
    "GridLayout",
    "MacroLibrary",
    "MemoryConfig",
    "NetlistIR",
    "PAWindowSpec",
    "SMemSynthError",
    "SimTrace",
    "TechParams",
    "UserSpec",
    "check_restrictions",
    "check_wellformed",
    "compare_pa_ppa",
    "config",
    "count_constructs",
    "default_library",
    "emit_hdl",
    "energy_report",
    "enumerate_configs",
    "estimate_dimensions",
    "evaluate_ppa",
    "explore",
    "generate_pa_sm",
    "generate_pa_tm",
    "generate_sram",
    "generate_variant",
    "logger",
    "pareto_front",
    "read_layout",
    "read_library",
    "realize",
    "select_best",
    "simulate",
    "verify_pa",
]
