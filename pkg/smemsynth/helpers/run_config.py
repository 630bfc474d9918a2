import argparse
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, TypeVar

from pydantic import BaseModel, ValidationError

from smemsynth.baplus import MacroLibrary, TechParams, default_library, read_library, read_tech
from smemsynth.base import UsageError

M = TypeVar("M", bound=BaseModel)

PATH_FIELDS: Tuple[str, ...] = ("lib", "tech", "spec", "config", "netlist", "trace")


def parse_bounds(text: str) -> Tuple[int, int, int, int]:
    """Parses ``R,C,K,M`` upper limits."""
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not R,C,K,M")
    if len(values) != 4 or min(values) < 1:
        raise argparse.ArgumentTypeError(f"'{text}' is not four positive integers R,C,K,M")
    return values  # type: ignore[return-value]


@dataclass
class RunConfig:
    """
    Options of one command run, built from parsed arguments.

    Attributes:
        command (str): Sub-command name.
        out (Path): Output directory.
        seed (int): Seed of every random choice, 0 by default.
        lib (Optional[Path]): BA+ library document.
        tech (Optional[Path]): Tech document overriding the library's block.
        spec (Optional[Path]): Request JSON (memory or parallel-access geometry).
        config (Optional[Path]): Configuration JSON for synthesis.
        netlist (Optional[Path]): Native netlist to simulate.
        trace (Optional[Path]): Trace to simulate.
        fixtures (List[Path]): Layout files or directories of them.
        boundary (str): Parallel-access boundary mode.
        ar_tol (Optional[float]): Aspect-ratio tolerance override.
        bounds (Optional[Tuple[int, int, int, int]]): Upper limits on R, C, K, M.
        options (Dict[str, Any]): Command-specific extras.

    Methods:
        validate(requires) -> None:
            Checks that required inputs are given and every given path exists.

        load_library() -> Tuple[MacroLibrary, TechParams]:
            Reads the library and tech, or generates the default library.

        load_model(path, model) -> BaseModel:
            Reads and validates a JSON document.

        out_path(name) -> Path:
            Path of an output file, creating the output directory.
    """

    command: str
    out: Path = Path("out")
    seed: int = 0
    lib: Optional[Path] = None
    tech: Optional[Path] = None
    spec: Optional[Path] = None
    config: Optional[Path] = None
    netlist: Optional[Path] = None
    trace: Optional[Path] = None
    fixtures: List[Path] = field(default_factory=list)
    boundary: str = "wrap"
    ar_tol: Optional[float] = None
    bounds: Optional[Tuple[int, int, int, int]] = None
    options: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        values = vars(args).copy()
        values.pop("handler", None)
        known = {name for name in cls.__dataclass_fields__ if name != "options"}
        kwargs = {key: values.pop(key) for key in list(values) if key in known and values[key] is not None}
        for name in PATH_FIELDS + ("out",):
            if name in kwargs:
                kwargs[name] = Path(kwargs[name])
        kwargs["fixtures"] = [Path(item) for item in kwargs.get("fixtures", [])]
        return cls(options=values, **kwargs)

    def validate(self, requires: Sequence[str] = ()) -> None:
        for name in requires:
            if getattr(self, name) in (None, []):
                raise UsageError(f"{self.command}: --{name} is required")
        for name in PATH_FIELDS:
            path = getattr(self, name)
            if path is not None and not path.is_file():
                raise UsageError(f"{self.command}: {name} file '{path}' not found")
        for path in self.fixtures:
            if not path.exists():
                raise UsageError(f"{self.command}: fixture '{path}' not found")
        if self.out.exists() and not self.out.is_dir():
            raise UsageError(f"{self.command}: output '{self.out}' is not a directory")

    def load_library(self) -> Tuple[MacroLibrary, TechParams]:
        tech = read_tech(self.tech) if self.tech else None
        if self.lib:
            lib = read_library(self.lib)
            return lib, tech or lib.tech
        lib = default_library(tech) if tech else default_library()
        return lib, lib.tech

    def load_model(self, path: Path, model: Type[M], **overrides: Any) -> M:
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}:{exc.lineno}: {exc.msg}")
        if isinstance(raw, dict):
            raw.update({key: value for key, value in overrides.items() if value is not None})
        try:
            return model.model_validate(raw)
        except ValidationError as exc:
            error = exc.errors()[0]
            where = ".".join(str(part) for part in error["loc"])
            raise UsageError(f"{path}: {where}: {error['msg']}")

    def out_path(self, name: str) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        return self.out / name
