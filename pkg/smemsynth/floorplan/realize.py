from collections import Counter
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, List, Literal, NamedTuple, Optional, Sequence, Tuple

from smemsynth.baplus import MacroLibrary, TechParams
from smemsynth.utils import ba_instance_name, log2, logger

from .estimate import GridGeometry

if TYPE_CHECKING:
    from smemsynth.explorer.spec import MemoryConfig

Kind = Literal["macro", "periph_region", "power_rail", "pin"]

# rectangles that must not overlap each other
SOLID_KINDS: Tuple[str, ...] = ("macro", "periph_region")


class Placement(NamedTuple):
    instance: str
    kind: Kind
    x: int
    y: int
    w: int
    h: int

    @property
    def x2(self) -> int:
        return self.x + self.w

    @property
    def y2(self) -> int:
        return self.y + self.h

    def overlaps(self, other: "Placement") -> bool:
        return self.x < other.x2 and other.x < self.x2 and self.y < other.y2 and other.y < self.y2

    def transposed(self) -> "Placement":
        return Placement(self.instance, self.kind, self.y, self.x, self.h, self.w)


@dataclass(frozen=True)
class Floorplan:
    """
    Placed rectangles on a die outline, integer nm.

    Attributes:
        name (str): Configuration label.
        die_w (int): Die width.
        die_h (int): Die height.
        placements (Tuple[Placement, ...]): Macros, periphery regions, rails and pins.
        ar_miss (bool): True when the requested aspect ratio was not met.
        transposed (bool): True when x and y were swapped.
    """

    name: str
    die_w: int
    die_h: int
    placements: Tuple[Placement, ...]
    ar_miss: bool = False
    transposed: bool = False

    @property
    def aspect_ratio(self) -> float:
        return self.die_h / self.die_w

    def of_kind(self, kind: str) -> List[Placement]:
        return [item for item in self.placements if item.kind == kind]

    def bounding_box(self) -> Tuple[int, int]:
        return (
            max(item.x2 for item in self.placements),
            max(item.y2 for item in self.placements),
        )

    def transpose(self) -> "Floorplan":
        return replace(
            self,
            die_w=self.die_h,
            die_h=self.die_w,
            placements=tuple(item.transposed() for item in self.placements),
            transposed=not self.transposed,
        )


def sram_pin_names(cfg: "MemoryConfig", lib: MacroLibrary) -> List[str]:
    macro = lib.resolve(cfg.variant)
    addr_width = max(1, log2(cfg.words(macro.B)))
    bits = cfg.bits(macro.W)
    names = ["clk", "ren", "wen"]
    for bus, width in (("raddr", addr_width), ("waddr", addr_width), ("wdata", bits), ("rdata", bits)):
        names.extend(f"{bus}[{index}]" for index in range(width))
    return names


def _pins(names: Sequence[str], die_w: int, die_h: int, size: int) -> List[Placement]:
    pitch = 2 * size
    per_column = max(1, (die_h - size) // pitch + 1)
    columns = max(1, (die_w - size) // pitch + 1)
    placed = []
    for index, name in enumerate(names):
        column, slot = divmod(index, per_column)
        placed.append(Placement(name, "pin", (column % columns) * pitch, slot * pitch, size, size))
    return placed


def realize(
    cfg: "MemoryConfig",
    lib: MacroLibrary,
    tech: Optional[TechParams] = None,
    logic_area: float = 0.0,
    ar_target: Optional[float] = None,
    ar_tol: float = 0.25,
    transpose: bool = False,
) -> Floorplan:
    """
    Places a configuration on a die.

    Banks form a row-major grid right of the decoder strip and above the
    global periphery strip; each bank stacks its K macros bottom-up under a
    bank periphery strip, with a gutter to the right. Horizontal power rails
    repeat every rail pitch and the pins line the left edge.

    Args:
        cfg (MemoryConfig): The configuration.
        lib (MacroLibrary): Library holding the variant.
        tech (Optional[TechParams]): Defaults to the library's tech.
        logic_area (float): Synthesized periphery area in um^2, widens the decoder strip.
        ar_target (Optional[float]): Desired height/width.
        ar_tol (float): Allowed relative deviation from ar_target.
        transpose (bool): Swap x and y of the result.

    Returns:
        Floorplan: The placement, with ar_miss set when the aspect ratio is out of tolerance.
    """
    tech = tech or lib.tech
    grid = GridGeometry(cfg, lib, tech, logic_area)
    placements: List[Placement] = [
        Placement("decoder_strip", "periph_region", 0, 0, grid.periph_w, grid.die_h),
        Placement("global_periph", "periph_region", grid.periph_w, 0, grid.die_w - grid.periph_w, grid.global_periph_h),
    ]

    for r in range(cfg.R):
        for c in range(cfg.C):
            x = grid.periph_w + c * grid.bank_w
            y = grid.global_periph_h + r * grid.bank_h
            for k in range(cfg.K):
                placements.append(
                    Placement(ba_instance_name(r, c, k), "macro", x, y + k * grid.macro_h, grid.macro_w, grid.macro_h)
                )
            placements.append(
                Placement(
                    f"bank_periph_r{r}_c{c}",
                    "periph_region",
                    x,
                    y + cfg.K * grid.macro_h,
                    grid.macro_w,
                    grid.bank_periph_h,
                )
            )

    rail_pitch = tech.tracks_nm(tech.rail_pitch_tracks)
    rail_h = tech.tracks_nm(tech.rail_width_tracks)
    for index in range(grid.die_h // rail_pitch + 1):
        net = "vss" if index % 2 == 0 else "vdd"
        y = min(index * rail_pitch, grid.die_h - rail_h)
        placements.append(Placement(f"{net}_{index}", "power_rail", 0, y, grid.die_w, rail_h))

    placements.extend(_pins(sram_pin_names(cfg, lib), grid.die_w, grid.die_h, tech.tracks_nm(tech.pin_size_tracks)))

    ar_miss = False
    if ar_target is not None:
        ratio = (grid.die_w / grid.die_h) if transpose else (grid.die_h / grid.die_w)
        ar_miss = abs(ratio - ar_target) > ar_tol * ar_target
        if ar_miss:
            logger.warning(f"Floorplan: {cfg.label} aspect ratio {ratio:.3f} misses {ar_target:.3f}")

    floorplan = Floorplan(cfg.label, grid.die_w, grid.die_h, tuple(placements), ar_miss)
    return floorplan.transpose() if transpose else floorplan


def check_floorplan(fp: Floorplan, cfg: "MemoryConfig") -> List[str]:
    """
    Checks non-overlap, containment and instance coverage of a floorplan.

    Returns:
        List[str]: One message per violation, empty when the floorplan is legal.
    """
    found: List[str] = []
    for item in fp.placements:
        if item.w <= 0 or item.h <= 0:
            found.append(f"degenerate: {item.instance} is {item.w}x{item.h}")
        if item.x < 0 or item.y < 0 or item.x2 > fp.die_w or item.y2 > fp.die_h:
            found.append(f"outside: {item.instance} at ({item.x}, {item.y}, {item.w}, {item.h})")

    solid = sorted((item for item in fp.placements if item.kind in SOLID_KINDS), key=lambda item: item.x)
    for index, item in enumerate(solid):
        for other in solid[index + 1:]:
            if other.x >= item.x2:
                break
            if item.overlaps(other):
                found.append(f"overlap: {item.instance} and {other.instance}")

    counts = Counter(item.instance for item in fp.of_kind("macro"))
    expected = {ba_instance_name(r, c, k) for r in range(cfg.R) for c in range(cfg.C) for k in range(cfg.K)}
    for name in sorted(expected):
        if counts[name] != 1:
            found.append(f"coverage: {name} placed {counts[name]} times")
    for name in sorted(set(counts) - expected):
        found.append(f"coverage: unexpected macro {name}")
    return found
