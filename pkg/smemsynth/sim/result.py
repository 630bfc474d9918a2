from pathlib import Path
from typing import Union

from .engine import SimResult


def format_result(result: SimResult) -> str:
    """``OUT <cycle> <hex>`` per read, ``X`` for undriven data, then a summary comment."""
    lines = [f"OUT {cycle} {'X' if value is None else format(value, 'x')}" for cycle, value in result.outputs]
    lines.append(
        f"# cycles={result.cycles} e_total_fj={result.e_total:.6f} "
        f"conflicts={result.conflicts} poison_reads={result.poison_reads}"
    )
    return "\n".join(lines) + "\n"


def write_result(result: SimResult, path: Union[str, Path]) -> None:
    Path(path).write_text(format_result(result), encoding="utf-8")
