from typing import Optional


class SMemSynthError(Exception):
    """
    Base class for every error raised by the synthesis framework.

    Attributes:
        message (str): Explanation of the error.
    """

    def __init__(self, message: str) -> None:
        """
        Initializes the error with a message.

        Args:
            message (str): The error message associated with the exception.
        """
        super().__init__(message)
        self.message: str = message


class BoundsError(SMemSynthError, ValueError):
    """Raised when a BA+ dimension falls outside the generation bounds."""


class LibraryParseError(SMemSynthError):
    """
    Raised when a library or tech document cannot be parsed.

    Attributes:
        location (Optional[str]): Line or field path of the offending entry.
    """

    def __init__(self, message: str, location: Optional[str] = None) -> None:
        text = f"{location}: {message}" if location else message
        super().__init__(text)
        self.location: Optional[str] = location


class DuplicateNameError(LibraryParseError):
    """Raised when two macros in one library share a name."""


class UnknownVariantError(SMemSynthError, KeyError):
    """Raised when a configuration names a BA+ variant missing from the library."""

    def __str__(self) -> str:
        return self.message


class ConstraintError(SMemSynthError, ValueError):
    """Raised when a memory configuration violates its capacity constraints."""


class NetlistError(SMemSynthError):
    """Raised when a netlist cannot be built or elaborated."""


class NetlistParseError(NetlistError):
    """Raised on malformed native netlist text."""


class TraceError(SMemSynthError):
    """Raised on malformed traces or port conflicts inside a trace."""


class SimulationError(SMemSynthError):
    """Raised when the simulator hits an illegal condition, such as an out-of-range address."""


class LayoutError(SMemSynthError):
    """Raised on malformed or out-of-bounds leaf-cell layouts."""


class UsageError(SMemSynthError):
    """Raised on invalid command-line usage or missing inputs."""


class VerificationFailure(SMemSynthError):
    """Raised when a functional verification run reports mismatches or conflicts."""
