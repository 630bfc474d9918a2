import csv
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Union

import numpy as np

from smemsynth.base import LibraryParseError
from smemsynth.utils import logger

from .library import MacroLibrary
from .macro import BAPlusMacro
from .tech import TechParams

REFERENCE_VARIANT = "ba_32x16"

NORMALIZED_HEADER: List[str] = [
    "variant",
    "B",
    "W",
    "t_access_ps",
    "area_um2",
    "edp_fj_ps",
    "t_access_norm",
    "area_norm",
    "edp_norm",
]


class NormalizedMacro(NamedTuple):
    """One variant's latency, area and energy-delay product, absolute and relative to the reference."""

    macro: BAPlusMacro
    metrics: np.ndarray
    norm: np.ndarray


def normalized_library(
    lib: MacroLibrary, reference: str = REFERENCE_VARIANT, tech: Optional[TechParams] = None
) -> List[NormalizedMacro]:
    """
    Normalizes every variant of a library to a reference variant.

    Energy-delay is the read energy times the access time. When the reference
    is not in the library the first macro takes its place.

    Args:
        lib (MacroLibrary): Nonempty library.
        reference (str): Variant whose figures become 1.0.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        List[NormalizedMacro]: One entry per macro in library order.

    Raises:
        LibraryParseError: If the library is empty.
    """
    if not len(lib):
        raise LibraryParseError("library is empty")
    tech = tech or lib.tech
    if reference not in lib:
        logger.warning(f"Library: {reference} not in library, normalizing to {lib.macros[0].name}")
        reference = lib.macros[0].name

    metrics = np.array(
        [[macro.t_access, macro.area_um2(tech), macro.e_read * macro.t_access] for macro in lib],
        dtype=float,
    )
    norm = metrics / metrics[lib.names.index(reference)]
    return [NormalizedMacro(macro, metrics[index], norm[index]) for index, macro in enumerate(lib)]


def write_normalized_library(rows: Iterable[NormalizedMacro], path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(NORMALIZED_HEADER)
        for macro, metrics, norm in rows:
            writer.writerow(
                [macro.name, macro.B, macro.W]
                + [f"{value:.6f}" for value in metrics]
                + [f"{value:.6f}" for value in norm]
            )
