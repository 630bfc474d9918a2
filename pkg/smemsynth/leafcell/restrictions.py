from collections import Counter
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from .layout import Direction, GridLayout, Shape


class RuleViolation(NamedTuple):
    rule: str
    layer: str
    shape: Optional[Shape]
    detail: str

    def __str__(self) -> str:
        target = self.shape.text() if self.shape else self.layer
        return f"{self.rule}: {target}: {self.detail}"


def layer_direction(layout: GridLayout, layer: str) -> Optional[Direction]:
    """Declared direction of a layer, else the majority direction of its shapes (ties go to the first shape)."""
    info = layout.layers[layer]
    if info.direction:
        return info.direction
    shapes = layout.on_layer(layer)
    if not shapes:
        return None
    counts = Counter(shape.direction for shape in shapes)
    first = shapes[0].direction
    other = "V" if first == "H" else "H"
    return other if counts[other] > counts[first] else first


def _merged(intervals: List[Tuple[Fraction, Fraction]]) -> List[Tuple[Fraction, Fraction]]:
    merged: List[Tuple[Fraction, Fraction]] = []
    for start, end in sorted(intervals):
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return merged


def _coverage(layout: GridLayout, layer: str, direction: Direction) -> List[RuleViolation]:
    lines, extent = (
        (layout.track_count, layout.width_pitches) if direction == "H" else (layout.width_pitches, layout.track_count)
    )
    by_index = {index: [] for index in range(lines)}
    for shape in layout.on_layer(layer):
        if shape.direction == direction and shape.index in by_index:
            by_index[int(shape.index)].append((shape.start, shape.end))

    violations = []
    for index, intervals in by_index.items():
        if _merged(intervals) != [(0, extent)]:
            violations.append(
                RuleViolation("coverage", layer, None, f"{direction} line {index} is not populated end to end")
            )
    return violations


def check_restrictions(layout: GridLayout) -> List[RuleViolation]:
    """
    Checks every layer against its grating restriction class.

    ``pure_grating_1d`` layers draw in one direction and populate every grid
    line from edge to edge; ``structured_1d`` layers draw in one direction
    with free segmentation; ``compound_2d`` layers may mix directions. Every
    shape of every class must sit on the grid.

    Args:
        layout (GridLayout): The cell.

    Returns:
        List[RuleViolation]: Violations in layer declaration order, empty when clean.
    """
    violations: List[RuleViolation] = []
    for layer, info in layout.layers.items():
        shapes = layout.on_layer(layer)
        for shape in shapes:
            if not shape.on_grid:
                violations.append(RuleViolation("off_grid", layer, shape, "not aligned to the grid"))

        if info.restriction == "compound_2d":
            continue
        direction = layer_direction(layout, layer)
        if direction is None:
            continue
        for shape in shapes:
            if shape.direction != direction:
                violations.append(
                    RuleViolation("direction", layer, shape, f"{shape.direction} shape on a {direction} layer")
                )
        if info.restriction == "pure_grating_1d":
            violations.extend(_coverage(layout, layer, direction))
    return violations
