from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from smemsynth.base import BoundsError
from smemsynth.utils import config, is_pow2

from .tech import DEFAULT_TECH, TechParams

# wordline drivers, local sense, clock/control
PERIPH_TRACKS = 6
PERIPH_PITCHES = 4

Pin = Tuple[str, Literal["N", "S", "E", "W"], int]


class BAPlusMacro(BaseModel):
    """
    A characterized B x W augmented bitcell array.

    Attributes:
        name (str): Variant identifier, ``ba_<B>x<W>`` for generated macros.
        B (int): Entries per bitline.
        W (int): Bits per wordline.
        height_tracks (int): Macro height in routing tracks.
        width_pitches (int): Macro width in poly pitches.
        t_access (float): Access time in ps.
        e_read (float): Read energy in fJ per access.
        e_write (float): Write energy in fJ per access.
        p_leak (float): Leakage in nW.
        pins (Tuple[Pin, ...]): Pin name, side and offset.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    name: str = Field(min_length=1)
    B: int = Field(ge=1)
    W: int = Field(ge=1)
    height_tracks: int
    width_pitches: int
    t_access: float = Field(alias="t_access_ps", gt=0)
    e_read: float = Field(alias="e_read_fj", gt=0)
    e_write: float = Field(alias="e_write_fj", gt=0)
    p_leak: float = Field(alias="p_leak_nw", gt=0)
    pins: Tuple[Pin, ...] = ()

    @model_validator(mode="after")
    def _check_geometry(self) -> "BAPlusMacro":
        for label, value in (("B", self.B), ("W", self.W)):
            if not is_pow2(value):
                raise ValueError(f"{label}={value}: not a power of two")
        if self.height_tracks < self.B:
            raise ValueError(f"height_tracks {self.height_tracks} < B {self.B}")
        if self.width_pitches < 2 * self.W:
            raise ValueError(f"width_pitches {self.width_pitches} < 2*W {2 * self.W}")
        return self

    @property
    def bits(self) -> int:
        return self.B * self.W

    def width_nm(self, tech: TechParams) -> int:
        return tech.pitches_nm(self.width_pitches)

    def height_nm(self, tech: TechParams) -> int:
        return tech.tracks_nm(self.height_tracks)

    def area_um2(self, tech: TechParams) -> float:
        return self.width_nm(tech) * self.height_nm(tech) / 1e6


def variant_name(B: int, W: int) -> str:
    return f"ba_{B}x{W}"


def parse_variant_name(name: str) -> Tuple[int, int]:
    try:
        prefix, dims = name.split("_", 1)
        B, W = (int(part) for part in dims.split("x"))
    except ValueError:
        raise BoundsError(f"{name}: not a generated variant name")
    if prefix != "ba":
        raise BoundsError(f"{name}: not a generated variant name")
    return B, W


def _check_dimension(label: str, value: int, bounds: Tuple[int, int]) -> None:
    low, high = bounds
    if not is_pow2(value):
        raise BoundsError(f"{label}={value}: not a power of two")
    if not low <= value <= high:
        raise BoundsError(f"{label}={value}: outside bounds [{low}, {high}]")


def generate_variant(
    B: int,
    W: int,
    tech: TechParams = DEFAULT_TECH,
    bounds: Optional[Tuple[int, int]] = None,
) -> BAPlusMacro:
    """
    Generates a BA+ macro model from the analytic geometry, timing and energy model.

    Args:
        B (int): Entries per bitline.
        W (int): Bits per wordline.
        tech (TechParams): Model coefficients.
        bounds (Optional[Tuple[int, int]]): Allowed range for B and W,
            defaults to SMEMSYNTH_LIB_BOUNDS.

    Returns:
        BAPlusMacro: The generated macro.

    Raises:
        BoundsError: If B or W is not a power of two within bounds.
    """
    bounds = bounds or config.LIB_BOUNDS
    _check_dimension("B", B, bounds)
    _check_dimension("W", W, bounds)

    height_tracks = B + PERIPH_TRACKS
    width_pitches = 2 * W + PERIPH_PITCHES
    pins: Tuple[Pin, ...] = (
        ("clk", "W", 0),
        ("ren", "W", 1),
        ("wen", "W", 2),
        ("rwl", "W", 3),
        ("wwl", "E", 3),
        ("din", "N", 2),
        ("dout", "S", 2),
    )

    return BAPlusMacro(
        name=variant_name(B, W),
        B=B,
        W=W,
        height_tracks=height_tracks,
        width_pitches=width_pitches,
        t_access=tech.a0 + tech.a1 * B + tech.a2 * W,
        e_read=tech.b0 + tech.b1 * W + tech.b2 * B * tech.leak_fraction,
        e_write=tech.c0 + tech.c1 * W + tech.c2 * B * tech.leak_fraction,
        p_leak=tech.leak_per_bit_nw * B * W,
        pins=pins,
    )
