from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Literal, NamedTuple, Optional, Tuple, Union

from smemsynth.base import LayoutError

Direction = Literal["H", "V"]
Restriction = Literal["pure_grating_1d", "structured_1d", "compound_2d"]
RESTRICTIONS: Tuple[str, ...] = ("pure_grating_1d", "structured_1d", "compound_2d")

# (x0, y0, x1, y1) in grid units: x in poly pitches, y in tracks
Rect = Tuple[Fraction, Fraction, Fraction, Fraction]


class Ratio(NamedTuple):
    """An unreduced ratio, printed as ``num/den`` the way cell tables list them."""

    num: int
    den: int

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __float__(self) -> float:
        return self.num / self.den if self.den else 0.0

    @property
    def value(self) -> float:
        return float(self)


class Shape(NamedTuple):
    """
    One drawn segment.

    An ``H`` shape sits on track ``index`` and spans pitches [start, end]; a
    ``V`` shape sits on pitch column ``index`` and spans tracks [start, end].
    """

    layer: str
    direction: Direction
    index: Fraction
    start: Fraction
    end: Fraction

    @property
    def rect(self) -> Rect:
        if self.direction == "H":
            return (self.start, self.index, self.end, self.index + 1)
        return (self.index, self.start, self.index + 1, self.end)

    @property
    def on_grid(self) -> bool:
        return all(Fraction(value).denominator == 1 for value in (self.index, self.start, self.end))

    def text(self) -> str:
        return f"{self.layer} {self.direction} {self.index} {self.start}-{self.end}"


class LayerInfo(NamedTuple):
    name: str
    restriction: Restriction
    direction: Optional[Direction] = None


@dataclass(frozen=True)
class GridLayout:
    """
    An abstract gridded standard cell.

    Attributes:
        name (str): Cell name.
        track_count (int): Cell height in routing tracks.
        width_pitches (int): Cell width in poly pitches.
        layers (Dict[str, LayerInfo]): Restriction class of every layer.
        shapes (Tuple[Shape, ...]): Drawn segments.
        active_fins (int): Fins forming active devices.
        total_fins (int): All fins of the cell.
        active_poly (int): Poly gates forming transistors.
        total_poly (int): All poly lines of the cell.
        power_rail_tracks (int): Tracks consumed by power rails.
    """

    name: str
    track_count: int
    width_pitches: int
    layers: Dict[str, LayerInfo] = field(default_factory=dict)
    shapes: Tuple[Shape, ...] = ()
    active_fins: int = 0
    total_fins: int = 0
    active_poly: int = 0
    total_poly: int = 0
    power_rail_tracks: int = 0

    def __post_init__(self) -> None:
        if self.track_count < 1 or self.width_pitches < 1:
            raise LayoutError(f"{self.name}: cell is {self.width_pitches} pitches x {self.track_count} tracks")
        for label, active, total in (
            ("fins", self.active_fins, self.total_fins),
            ("poly", self.active_poly, self.total_poly),
            ("rails", self.power_rail_tracks, self.track_count),
        ):
            if not 0 <= active <= total:
                raise LayoutError(f"{self.name}: {label} {active}/{total}")
        for shape in self.shapes:
            if shape.layer not in self.layers:
                raise LayoutError(f"{self.name}: layer '{shape.layer}' has no restriction class")
            x0, y0, x1, y1 = shape.rect
            if not (0 <= x0 < x1 <= self.width_pitches and 0 <= y0 < y1 <= self.track_count):
                raise LayoutError(f"{self.name}: shape {shape.text()} outside the cell or empty")

    def on_layer(self, layer: str) -> List[Shape]:
        return [shape for shape in self.shapes if shape.layer == layer]

    def with_restriction(self, layer: str, restriction: Restriction, direction: Optional[Direction] = None) -> "GridLayout":
        """Copy with one layer re-declared."""
        if layer not in self.layers:
            raise LayoutError(f"{self.name}: unknown layer '{layer}'")
        layers = dict(self.layers)
        layers[layer] = LayerInfo(layer, restriction, direction if direction else layers[layer].direction)
        return replace(self, layers=layers)


def _fraction(text: str, where: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise LayoutError(f"{where}: '{text}' is not a number")


def _count_pair(text: str, where: str) -> Tuple[int, int]:
    try:
        active, total = (int(part) for part in text.split("/"))
    except ValueError:
        raise LayoutError(f"{where}: expected <active>/<total>, got '{text}'")
    return active, total


def _tokens(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, line in enumerate(text.splitlines(), start=1):
        words = line.split("#", 1)[0].split()
        if words:
            yield number, words


def parse_layout(text: str, source: str = "<layout>") -> GridLayout:
    """
    Parses a layout fixture.

    Lines are ``cell <name>``, ``meta tracks=<n> pitches=<n> fins=<a>/<t>
    poly=<a>/<t> rails=<n>``, ``layer <name> <class> [H|V]`` and ``shape
    <layer> <H|V> <index> <start> <end>``; ``#`` starts a comment.

    Raises:
        LayoutError: On unknown statements, malformed values or layout invariants.
    """
    name = Path(source).stem
    meta: Dict[str, str] = {}
    layers: Dict[str, LayerInfo] = {}
    shapes: List[Shape] = []
    for number, words in _tokens(text):
        where = f"{source}:{number}"
        keyword, args = words[0], words[1:]
        if keyword == "cell" and len(args) == 1:
            name = args[0]
        elif keyword == "meta":
            for item in args:
                key, sep, value = item.partition("=")
                if not sep:
                    raise LayoutError(f"{where}: expected key=value, got '{item}'")
                meta[key] = value
        elif keyword == "layer" and len(args) in (2, 3):
            if args[1] not in RESTRICTIONS:
                raise LayoutError(f"{where}: unknown restriction class '{args[1]}'")
            direction = args[2] if len(args) == 3 else None
            if direction not in (None, "H", "V"):
                raise LayoutError(f"{where}: direction must be H or V")
            layers[args[0]] = LayerInfo(args[0], args[1], direction)
        elif keyword == "shape" and len(args) == 5:
            if args[1] not in ("H", "V"):
                raise LayoutError(f"{where}: direction must be H or V")
            index, start, end = (_fraction(value, where) for value in args[2:])
            shapes.append(Shape(args[0], args[1], index, start, end))
        else:
            raise LayoutError(f"{where}: cannot parse '{' '.join(words)}'")

    missing = [key for key in ("tracks", "pitches") if key not in meta]
    if missing:
        raise LayoutError(f"{source}: meta is missing {', '.join(missing)}")
    try:
        tracks, pitches, rails = int(meta["tracks"]), int(meta["pitches"]), int(meta.get("rails", "0"))
    except ValueError:
        raise LayoutError(f"{source}: meta values must be integers")
    active_fins, total_fins = _count_pair(meta.get("fins", "0/0"), source)
    active_poly, total_poly = _count_pair(meta.get("poly", "0/0"), source)
    return GridLayout(
        name=name,
        track_count=tracks,
        width_pitches=pitches,
        layers=layers,
        shapes=tuple(shapes),
        active_fins=active_fins,
        total_fins=total_fins,
        active_poly=active_poly,
        total_poly=total_poly,
        power_rail_tracks=rails,
    )


def read_layout(path: Union[str, Path]) -> GridLayout:
    return parse_layout(Path(path).read_text(encoding="utf-8"), str(path))
