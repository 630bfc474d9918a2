from .library import (
    MacroLibrary,
    default_library,
    load_library,
    read_library,
    read_tech,
    save_library,
)
from .macro import BAPlusMacro, generate_variant, parse_variant_name, variant_name
from .report import (
    NORMALIZED_HEADER,
    REFERENCE_VARIANT,
    NormalizedMacro,
    normalized_library,
    write_normalized_library,
)
from .tech import DEFAULT_TECH, TechParams

__all__ = [
    "BAPlusMacro",
    "DEFAULT_TECH",
    "MacroLibrary",
    "NORMALIZED_HEADER",
    "NormalizedMacro",
    "REFERENCE_VARIANT",
    "TechParams",
    "default_library",
    "generate_variant",
    "load_library",
    "normalized_library",
    "parse_variant_name",
    "read_library",
    "read_tech",
    "save_library",
    "variant_name",
    "write_normalized_library",
]
