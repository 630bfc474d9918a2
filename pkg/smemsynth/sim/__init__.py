from .energy import energy_breakdown, energy_report
from .engine import SimResult, Simulator, simulate
from .result import format_result, write_result
from .trace import (
    SimTrace,
    TraceOp,
    format_trace,
    parse_trace,
    preload_trace,
    random_pa_trace,
    random_sram_trace,
    read_trace,
    write_trace,
)
from .verify import (
    PAVerifyReport,
    SRAMVerifyReport,
    image_from_banks,
    pa_spec_of,
    reference_sram_outputs,
    verify_pa,
    verify_sram,
)

__all__ = [
    "PAVerifyReport",
    "SRAMVerifyReport",
    "SimResult",
    "SimTrace",
    "Simulator",
    "TraceOp",
    "energy_breakdown",
    "energy_report",
    "format_result",
    "format_trace",
    "image_from_banks",
    "pa_spec_of",
    "parse_trace",
    "preload_trace",
    "random_pa_trace",
    "random_sram_trace",
    "read_trace",
    "reference_sram_outputs",
    "simulate",
    "verify_pa",
    "verify_sram",
    "write_result",
    "write_trace",
]
