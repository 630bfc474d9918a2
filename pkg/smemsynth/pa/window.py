from typing import Dict, Literal, NamedTuple, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from smemsynth.base import ConstraintError
from smemsynth.utils import clog2, mask

Boundary = Literal["wrap", "clamp"]
BOUNDARIES: Tuple[str, ...] = ("wrap", "clamp")


class PAWindowSpec(BaseModel):
    """
    Parallel-access geometry: a 2^a x 2^b window anywhere in a 2^m x 2^n image.

    Attributes:
        m (int): log2 of the image extent along x.
        n (int): log2 of the image extent along y.
        a (int): log2 of the window extent along x.
        b (int): log2 of the window extent along y.
        pixel_bits (int): Bits per pixel.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    m: int = Field(ge=1, le=12)
    n: int = Field(ge=1, le=12)
    a: int = Field(ge=0)
    b: int = Field(ge=0)
    pixel_bits: int = Field(default=8, ge=1, le=32)

    @model_validator(mode="after")
    def _check_window(self) -> "PAWindowSpec":
        if self.a > self.m or self.b > self.n:
            raise ValueError(f"window 2^{self.a}x2^{self.b} exceeds image 2^{self.m}x2^{self.n}")
        return self

    @property
    def label(self) -> str:
        return f"pa_m{self.m}n{self.n}a{self.a}b{self.b}"

    @property
    def width(self) -> int:
        return 1 << self.m

    @property
    def height(self) -> int:
        return 1 << self.n

    @property
    def banks_x(self) -> int:
        return 1 << self.a

    @property
    def banks_y(self) -> int:
        return 1 << self.b

    @property
    def bank_count(self) -> int:
        return 1 << (self.a + self.b)

    @property
    def rows(self) -> int:
        return 1 << (self.m - self.a)

    @property
    def cols(self) -> int:
        return 1 << (self.n - self.b)

    @property
    def words_per_bank(self) -> int:
        return self.rows * self.cols

    @property
    def bank_width(self) -> int:
        """Wordline width of the bank macros, pixel_bits rounded up to a power of two."""
        return 1 << clog2(self.pixel_bits)


class PixelLocation(NamedTuple):
    bank_p: int
    bank_q: int
    row: int
    col: int


class WindowPlan(NamedTuple):
    """Per-bank (row, col) reads for one window origin plus the alignment rotation."""

    x: int
    y: int
    reads: Dict[Tuple[int, int], Tuple[int, int]]
    rotation: Tuple[int, int]


def _check_coordinate(spec: PAWindowSpec, x: int, y: int) -> None:
    if not (0 <= x < spec.width and 0 <= y < spec.height):
        raise ConstraintError(f"{spec.label}: coordinate ({x}, {y}) outside the image")


def map_pixel(spec: PAWindowSpec, x: int, y: int) -> PixelLocation:
    """Places pixel (x, y) in bank (x mod 2^a, y mod 2^b) at address (x >> a, y >> b)."""
    _check_coordinate(spec, x, y)
    return PixelLocation(x & mask(spec.a), y & mask(spec.b), x >> spec.a, y >> spec.b)


def window_access_plan(spec: PAWindowSpec, x: int, y: int) -> WindowPlan:
    """
    Computes the read address of every bank for the window at origin (x, y).

    All banks share the base address (x >> a, y >> b); bank p adds one row when
    p < x mod 2^a, and bank q one column when q < y mod 2^b, wrapping around
    the image. Each bank is read exactly once.

    Args:
        spec (PAWindowSpec): The geometry.
        x (int): Window origin along x.
        y (int): Window origin along y.

    Returns:
        WindowPlan: Reads keyed by bank (p, q) and rotation (x mod 2^a, y mod 2^b).
    """
    _check_coordinate(spec, x, y)
    rx, ry = x & mask(spec.a), y & mask(spec.b)
    base_row, base_col = x >> spec.a, y >> spec.b
    reads = {
        (p, q): (
            (base_row + (p < rx)) % spec.rows,
            (base_col + (q < ry)) % spec.cols,
        )
        for p in range(spec.banks_x)
        for q in range(spec.banks_y)
    }
    return WindowPlan(x, y, reads, (rx, ry))


def window_offsets(spec: PAWindowSpec, x: int, y: int, i: int, j: int, boundary: Boundary = "wrap") -> Tuple[int, int]:
    """Window offset actually delivered at slot (i, j); clamp replicates the last row and column."""
    if boundary == "clamp":
        return min(i, spec.width - 1 - x), min(j, spec.height - 1 - y)
    return i, j


def serving_bank(spec: PAWindowSpec, x: int, y: int, i: int, j: int, boundary: Boundary = "wrap") -> Tuple[int, int]:
    """Bank whose output the alignment network routes to window slot (i, j)."""
    i, j = window_offsets(spec, x, y, i, j, boundary)
    return (x + i) & mask(spec.a), (y + j) & mask(spec.b)


def store_image(spec: PAWindowSpec, image: np.ndarray) -> np.ndarray:
    """Distributes an image into a (2^a, 2^b, rows, cols) bank array."""
    if image.shape != (spec.width, spec.height):
        raise ConstraintError(f"{spec.label}: image shape {image.shape} does not match")
    # image[x, y] -> banks[x mod 2^a, y mod 2^b, x >> a, y >> b]
    tiles = image.reshape(spec.rows, spec.banks_x, spec.cols, spec.banks_y)
    return tiles.transpose(1, 3, 0, 2).copy()


def read_window(
    spec: PAWindowSpec, banks: np.ndarray, plan: WindowPlan, boundary: Boundary = "wrap"
) -> np.ndarray:
    """Performs the planned bank reads and the alignment, returning a (2^a, 2^b) window."""
    fetched = {bank: banks[bank[0], bank[1], row, col] for bank, (row, col) in plan.reads.items()}
    window = np.empty((spec.banks_x, spec.banks_y), dtype=banks.dtype)
    for i in range(spec.banks_x):
        for j in range(spec.banks_y):
            window[i, j] = fetched[serving_bank(spec, plan.x, plan.y, i, j, boundary)]
    return window


def reference_window(
    image: np.ndarray, spec: PAWindowSpec, x: int, y: int, boundary: Boundary = "wrap"
) -> np.ndarray:
    """The 2^a x 2^b sub-array at (x, y), toroidal for wrap, edge-replicating for clamp."""
    _check_coordinate(spec, x, y)
    xs = np.arange(x, x + spec.banks_x)
    ys = np.arange(y, y + spec.banks_y)
    if boundary == "clamp":
        xs, ys = np.minimum(xs, spec.width - 1), np.minimum(ys, spec.height - 1)
    else:
        xs, ys = xs % spec.width, ys % spec.height
    return image[np.ix_(xs, ys)]


def random_image(spec: PAWindowSpec, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(0, 1 << spec.pixel_bits, size=(spec.width, spec.height), dtype=np.int64)


def pack_window(spec: PAWindowSpec, window: np.ndarray) -> int:
    """Packs a window into the alignment output word, slot (i, j) at bit (i * 2^b + j) * pixel_bits."""
    value = 0
    for i in range(spec.banks_x):
        for j in range(spec.banks_y):
            value |= int(window[i, j]) << (((i << spec.b) | j) * spec.pixel_bits)
    return value


def unpack_window(spec: PAWindowSpec, value: int) -> np.ndarray:
    window = np.empty((spec.banks_x, spec.banks_y), dtype=np.int64)
    for i in range(spec.banks_x):
        for j in range(spec.banks_y):
            window[i, j] = (value >> (((i << spec.b) | j) * spec.pixel_bits)) & mask(spec.pixel_bits)
    return window
