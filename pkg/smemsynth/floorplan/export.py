import csv
from pathlib import Path
from typing import Union

from smemsynth.utils import logger

from .realize import Floorplan


def format_floorplan(fp: Floorplan) -> str:
    lines = [f"# floorplan {fp.name}", f"die {fp.die_w} {fp.die_h}"]
    if fp.ar_miss:
        lines.append("# aspect ratio target missed")
    for item in fp.placements:
        lines.append(f"rect {item.instance} {item.kind} {item.x} {item.y} {item.w} {item.h}")
    return "\n".join(lines) + "\n"


def write_floorplan(fp: Floorplan, path: Union[str, Path]) -> None:
    Path(path).write_text(format_floorplan(fp), encoding="utf-8")
    logger.info(f"Floorplan: {fp.name} {fp.die_w}x{fp.die_h} nm to {path}")


def write_floorplan_csv(fp: Floorplan, path: Union[str, Path]) -> None:
    """Plot-ready rectangles, one row per placement."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["instance", "kind", "x_nm", "y_nm", "w_nm", "h_nm"])
        for item in fp.placements:
            writer.writerow(list(item))
