from .exception import (
    BoundsError,
    ConstraintError,
    DuplicateNameError,
    LayoutError,
    LibraryParseError,
    NetlistError,
    NetlistParseError,
    SimulationError,
    SMemSynthError,
    TraceError,
    UnknownVariantError,
    UsageError,
    VerificationFailure,
)

__all__ = [
    "BoundsError",
    "ConstraintError",
    "DuplicateNameError",
    "LayoutError",
    "LibraryParseError",
    "NetlistError",
    "NetlistParseError",
    "SimulationError",
    "SMemSynthError",
    "TraceError",
    "UnknownVariantError",
    "UsageError",
    "VerificationFailure",
]
