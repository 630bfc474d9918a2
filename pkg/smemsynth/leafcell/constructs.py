from fractions import Fraction
from typing import FrozenSet, NamedTuple, Optional, Sequence, Set, Tuple

from smemsynth.base import LayoutError

from .layout import GridLayout, Rect, Shape

Construct = FrozenSet[Tuple[str, Fraction, Fraction, Fraction, Fraction]]


class ConstructCount(NamedTuple):
    """Unique constructs among targets whose window stays inside the cell, those whose window exits it, and both."""

    interior: int
    boundary: int
    total: int


def _clip(rect: Rect, window: Rect) -> Optional[Rect]:
    x0, y0 = max(rect[0], window[0]), max(rect[1], window[1])
    x1, y1 = min(rect[2], window[2]), min(rect[3], window[3])
    if x0 >= x1 or y0 >= y1:
        return None
    return (x0, y0, x1, y1)


def construct_window(shape: Shape, window_pitches: int) -> Rect:
    """The square region of influence centered on a target shape."""
    x0, y0, x1, y1 = shape.rect
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    half = Fraction(window_pitches, 2)
    return (cx - half, cy - half, cx + half, cy + half)


def canonical_construct(layout: GridLayout, target: Shape, window_pitches: int, layers: Sequence[str]) -> Construct:
    """Neighborhood of a target, clipped to its window and translated so the target centroid is the origin."""
    window = construct_window(target, window_pitches)
    cx, cy = (window[0] + window[2]) / 2, (window[1] + window[3]) / 2
    pieces = set()
    for shape in layout.shapes:
        if shape.layer not in layers:
            continue
        clipped = _clip(shape.rect, window)
        if clipped:
            pieces.add((shape.layer, clipped[0] - cx, clipped[1] - cy, clipped[2] - cx, clipped[3] - cy))
    return frozenset(pieces)


def count_constructs(
    layout: GridLayout,
    target_layer: str,
    window_pitches: int,
    relevant_layers: Optional[Sequence[str]] = None,
) -> ConstructCount:
    """
    Counts the unique pattern constructs around every shape of a layer.

    A construct is the set of relevant shapes clipped to a square window
    centered on a target shape, translated to the target centroid. No
    rotation or mirror equivalence is applied. Targets whose window leaves
    the cell are counted apart, since the pattern beyond the edge is unknown.

    Args:
        layout (GridLayout): The cell.
        target_layer (str): Layer whose shapes are the targets.
        window_pitches (int): Side of the window in grid units.
        relevant_layers (Optional[Sequence[str]]): Layers seen in the window, the target layer by default.

    Returns:
        ConstructCount: Interior, boundary and overall unique counts.

    Raises:
        LayoutError: If the window is smaller than one pitch or a layer is undeclared.
    """
    if window_pitches < 1:
        raise LayoutError(f"construct window of {window_pitches} pitches")
    layers = list(relevant_layers or (target_layer,))
    for layer in [target_layer, *layers]:
        if layer not in layout.layers:
            raise LayoutError(f"{layout.name}: unknown layer '{layer}'")

    interior: Set[Construct] = set()
    boundary: Set[Construct] = set()
    for target in layout.on_layer(target_layer):
        construct = canonical_construct(layout, target, window_pitches, layers)
        x0, y0, x1, y1 = construct_window(target, window_pitches)
        inside = x0 >= 0 and y0 >= 0 and x1 <= layout.width_pitches and y1 <= layout.track_count
        (interior if inside else boundary).add(construct)
    return ConstructCount(len(interior), len(boundary), len(interior | boundary))

