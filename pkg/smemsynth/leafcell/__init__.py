from .constructs import ConstructCount, canonical_construct, construct_window, count_constructs
from .layout import RESTRICTIONS, GridLayout, LayerInfo, Ratio, Shape, parse_layout, read_layout
from .metrics import (
    METRICS_HEADER,
    MetricsRow,
    fin_efficiency,
    metrics_report,
    power_rail_efficiency,
    transistor_efficiency,
    write_metrics_report,
)
from .restrictions import RuleViolation, check_restrictions, layer_direction

__all__ = [
    "ConstructCount",
    "GridLayout",
    "LayerInfo",
    "METRICS_HEADER",
    "MetricsRow",
    "RESTRICTIONS",
    "Ratio",
    "RuleViolation",
    "Shape",
    "canonical_construct",
    "check_restrictions",
    "construct_window",
    "count_constructs",
    "fin_efficiency",
    "layer_direction",
    "metrics_report",
    "parse_layout",
    "power_rail_efficiency",
    "read_layout",
    "transistor_efficiency",
    "write_metrics_report",
]
