import csv
from pathlib import Path
from typing import Iterable, List, NamedTuple, Union

from .ppa import PPAEstimate
from .spec import MemoryConfig

REPORT_HEADER: List[str] = [
    "variant",
    "R",
    "C",
    "K",
    "M",
    "area_um2",
    "t_cycle_ps",
    "e_op_fj",
    "p_leak_nw",
    "gops_per_watt",
    "pareto",
]


class ReportRow(NamedTuple):
    config: MemoryConfig
    estimate: PPAEstimate
    pareto: bool


def fmt(value: float) -> str:
    return f"{value:.6f}"


def write_report(rows: Iterable[ReportRow], path: Union[str, Path]) -> None:
    """Writes one RFC-4180 CSV row per evaluated configuration."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(REPORT_HEADER)
        for cfg, estimate, pareto in rows:
            writer.writerow(
                [
                    cfg.variant,
                    cfg.R,
                    cfg.C,
                    cfg.K,
                    cfg.M,
                    fmt(estimate.area),
                    fmt(estimate.t_cycle),
                    fmt(estimate.e_op),
                    fmt(estimate.p_leak),
                    fmt(estimate.gops_per_watt),
                    int(pareto),
                ]
            )


def write_plot_data(rows: Iterable[ReportRow], path: Union[str, Path]) -> None:
    """Writes gnuplot-ready whitespace columns: area, GOPS/W, pareto flag, label."""
    lines = ["# area_um2 gops_per_watt pareto config"]
    for cfg, estimate, pareto in rows:
        lines.append(f"{fmt(estimate.area)} {fmt(estimate.gops_per_watt)} {int(pareto)} {cfg.label}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
