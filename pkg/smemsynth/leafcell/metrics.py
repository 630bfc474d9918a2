import csv
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

from smemsynth.base import LayoutError
from smemsynth.utils import logger, parallel_map

from .constructs import count_constructs
from .layout import GridLayout, Ratio
from .restrictions import check_restrictions


def fin_efficiency(layout: GridLayout) -> Ratio:
    """
    Fins forming active devices over all fins of the cell.

    Raises:
        LayoutError: If the cell has no fins.
    """
    if layout.total_fins == 0:
        raise LayoutError(f"{layout.name}: no fins")
    return Ratio(layout.active_fins, layout.total_fins)


def transistor_efficiency(layout: GridLayout) -> Ratio:
    """Active poly gates times the poly pitch over the cell width, in pitches."""
    return Ratio(layout.active_poly, layout.width_pitches)


def power_rail_efficiency(layout: GridLayout) -> Ratio:
    return Ratio(layout.power_rail_tracks, layout.track_count)


METRICS_HEADER = [
    "cell",
    "tracks",
    "pitches",
    "transistor_eff",
    "fin_eff",
    "fin_eff_value",
    "power_rail_eff",
    "violations",
    "constructs",
]


@dataclass(frozen=True)
class MetricsRow:
    cell: str
    tracks: int
    pitches: int
    transistor: Ratio
    fin: Optional[Ratio]
    power_rail: Ratio
    violations: int
    constructs: Optional[int]

    def fields(self) -> List[str]:
        return [
            self.cell,
            str(self.tracks),
            str(self.pitches),
            str(self.transistor),
            str(self.fin) if self.fin else "",
            f"{float(self.fin):.4f}" if self.fin else "",
            str(self.power_rail),
            str(self.violations),
            "" if self.constructs is None else str(self.constructs),
        ]


def _row(layout: GridLayout, construct_layer: Optional[str], window_pitches: int) -> MetricsRow:
    fin = fin_efficiency(layout) if layout.total_fins else None
    constructs = None
    if construct_layer and construct_layer in layout.layers:
        constructs = count_constructs(layout, construct_layer, window_pitches).total
    return MetricsRow(
        cell=layout.name,
        tracks=layout.track_count,
        pitches=layout.width_pitches,
        transistor=transistor_efficiency(layout),
        fin=fin,
        power_rail=power_rail_efficiency(layout),
        violations=len(check_restrictions(layout)),
        constructs=constructs,
    )


def metrics_report(
    layouts: Sequence[GridLayout],
    construct_layer: Optional[str] = "CA",
    window_pitches: int = 5,
) -> List[MetricsRow]:
    """
    Tabulates every leaf-cell metric for a set of layouts.

    Args:
        layouts (Sequence[GridLayout]): Cells to analyse, reported in order.
        construct_layer (Optional[str]): Layer whose unique constructs are counted, skipped when absent.
        window_pitches (int): Side of the construct window.

    Returns:
        List[MetricsRow]: One row per layout.
    """
    rows = parallel_map(lambda layout: _row(layout, construct_layer, window_pitches), layouts)
    logger.info(f"Leafcell: Analysed {len(rows)} cells")
    return rows


def write_metrics_report(rows: Sequence[MetricsRow], path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(METRICS_HEADER)
        for row in rows:
            writer.writerow(row.fields())
