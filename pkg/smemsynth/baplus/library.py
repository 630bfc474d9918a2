import json
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError
from typing_extensions import Self

from smemsynth.base import DuplicateNameError, LibraryParseError, UnknownVariantError
from smemsynth.utils import logger

from .macro import BAPlusMacro, generate_variant, parse_variant_name, variant_name
from .tech import DEFAULT_TECH, TechParams

DEFAULT_DIMENSIONS: Tuple[int, ...] = (8, 16, 32, 64)

# widened bounds for variants generated on demand
ON_DEMAND_BOUNDS: Tuple[int, int] = (1, 1 << 12)


class LibraryDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tech: TechParams
    macros: List[BAPlusMacro]


class MacroLibrary:
    """
    An immutable, name-indexed collection of BA+ macros and their technology.

    Methods:
        get(name) -> BAPlusMacro:
            Looks up a macro, raising UnknownVariantError when missing.

        resolve(name) -> BAPlusMacro:
            Looks up a macro, generating a named variant on demand.

        variant_for(B, W) -> BAPlusMacro:
            Finds or generates the B x W variant.
    """

    def __init__(self, macros: Iterable[BAPlusMacro], tech: TechParams = DEFAULT_TECH) -> None:
        self.tech: TechParams = tech
        self.macros: Tuple[BAPlusMacro, ...] = tuple(macros)
        self._index: Dict[str, BAPlusMacro] = {}
        for macro in self.macros:
            if macro.name in self._index:
                raise DuplicateNameError(f"duplicate macro name '{macro.name}'")
            self._index[macro.name] = macro

    @classmethod
    def from_document(cls, document: LibraryDocument) -> Self:
        return cls(document.macros, document.tech)

    def __iter__(self) -> Iterator[BAPlusMacro]:
        return iter(self.macros)

    def __len__(self) -> int:
        return len(self.macros)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MacroLibrary):
            return NotImplemented
        return self.macros == other.macros and self.tech == other.tech

    @property
    def names(self) -> List[str]:
        return [macro.name for macro in self.macros]

    def get(self, name: str) -> BAPlusMacro:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariantError(f"unknown BA+ variant '{name}'")

    def resolve(self, name: str) -> BAPlusMacro:
        if name in self._index:
            return self._index[name]
        B, W = parse_variant_name(name)
        return generate_variant(B, W, self.tech, bounds=ON_DEMAND_BOUNDS)

    def variant_for(self, B: int, W: int) -> BAPlusMacro:
        return self.resolve(variant_name(B, W))


def default_library(
    tech: TechParams = DEFAULT_TECH,
    entries: Sequence[int] = DEFAULT_DIMENSIONS,
    widths: Sequence[int] = DEFAULT_DIMENSIONS,
    bounds: Optional[Tuple[int, int]] = None,
) -> MacroLibrary:
    """
    Generates the shipped library over a grid of B and W.

    Args:
        tech (TechParams): Model coefficients.
        entries (Sequence[int]): Values of B.
        widths (Sequence[int]): Values of W.
        bounds (Optional[Tuple[int, int]]): Generation bounds.

    Returns:
        MacroLibrary: One macro per (B, W) pair, B-major.
    """
    macros = [generate_variant(B, W, tech, bounds) for B in entries for W in widths]
    logger.info(f"Library: Generated {len(macros)} variants")
    return MacroLibrary(macros, tech)


def _location(loc: Tuple[Union[int, str], ...]) -> str:
    text = ""
    for part in loc:
        text += f"[{part}]" if isinstance(part, int) else (f".{part}" if text else str(part))
    return text


def save_library(
    lib: Union[MacroLibrary, Sequence[BAPlusMacro]],
    path: Union[str, Path],
    tech: Optional[TechParams] = None,
) -> None:
    """
    Writes a library as a JSON document.

    Args:
        lib (Union[MacroLibrary, Sequence[BAPlusMacro]]): Nonempty library with unique names.
        path (Union[str, Path]): Destination file.
        tech (Optional[TechParams]): Tech block, defaults to the library's own.

    Raises:
        LibraryParseError: If the library is empty.
        DuplicateNameError: If two macros share a name.
    """
    if not isinstance(lib, MacroLibrary):
        lib = MacroLibrary(lib, tech or DEFAULT_TECH)
    if not len(lib):
        raise LibraryParseError("library is empty")

    document = LibraryDocument(tech=tech or lib.tech, macros=list(lib.macros))
    text = json.dumps(document.model_dump(mode="json", by_alias=True), indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")
    logger.info(f"Library: Saved {len(lib)} macros to {path}")


def read_library(path: Union[str, Path]) -> MacroLibrary:
    """
    Parses a library document including its tech block.

    Args:
        path (Union[str, Path]): Library file.

    Returns:
        MacroLibrary: The parsed library.

    Raises:
        LibraryParseError: On malformed JSON, missing or unknown fields.
        DuplicateNameError: If two macros share a name.
    """
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LibraryParseError(exc.msg, location=f"{path}:{exc.lineno}:{exc.colno}")

    try:
        document = LibraryDocument.model_validate(raw)
    except ValidationError as exc:
        error = exc.errors()[0]
        raise LibraryParseError(error["msg"], location=f"{path}: {_location(error['loc'])}")

    return MacroLibrary.from_document(document)


def load_library(path: Union[str, Path]) -> List[BAPlusMacro]:
    """
    Loads the macros of a library document.

    Args:
        path (Union[str, Path]): Library file.

    Returns:
        List[BAPlusMacro]: The macros in file order.
    """
    return list(read_library(path).macros)


def read_tech(path: Union[str, Path]) -> TechParams:
    """Parses a standalone tech document (the ``tech`` object of a library)."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        return TechParams.model_validate(raw.get("tech", raw) if isinstance(raw, dict) else raw)
    except json.JSONDecodeError as exc:
        raise LibraryParseError(exc.msg, location=f"{path}:{exc.lineno}:{exc.colno}")
    except ValidationError as exc:
        error = exc.errors()[0]
        raise LibraryParseError(error["msg"], location=f"{path}: {_location(error['loc'])}")
