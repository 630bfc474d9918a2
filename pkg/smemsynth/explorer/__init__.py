from .enumerate import enumerate_configs, meets_aspect_ratio
from .explore import Exploration, explore
from .pareto import dominated_mask, pareto_front
from .ppa import (
    PPAEstimate,
    decode_energy,
    decoder_area,
    evaluate_ppa,
    global_decoder_area,
    gops_per_watt,
    periphery_logic_area,
    traditional_baseline,
)
from .report import REPORT_HEADER, ReportRow, write_plot_data, write_report
from .select import Selection, constraint_violation, select_best
from .spec import MemoryConfig, UserSpec

__all__ = [
    "Exploration",
    "MemoryConfig",
    "PPAEstimate",
    "REPORT_HEADER",
    "ReportRow",
    "Selection",
    "UserSpec",
    "constraint_violation",
    "decode_energy",
    "decoder_area",
    "dominated_mask",
    "enumerate_configs",
    "evaluate_ppa",
    "explore",
    "global_decoder_area",
    "gops_per_watt",
    "meets_aspect_ratio",
    "pareto_front",
    "periphery_logic_area",
    "select_best",
    "traditional_baseline",
    "write_plot_data",
    "write_report",
]
