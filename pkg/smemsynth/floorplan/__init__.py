from .estimate import GridGeometry, estimate_dimensions
from .export import format_floorplan, write_floorplan, write_floorplan_csv
from .realize import Floorplan, Placement, check_floorplan, realize, sram_pin_names

__all__ = [
    "Floorplan",
    "GridGeometry",
    "Placement",
    "check_floorplan",
    "estimate_dimensions",
    "format_floorplan",
    "realize",
    "sram_pin_names",
    "write_floorplan",
    "write_floorplan_csv",
]
