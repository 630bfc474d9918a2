from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import DefaultDict, Dict, Iterable, List, Literal, NamedTuple, Optional, Tuple, Union

import numpy as np

from smemsynth.base import TraceError
from smemsynth.utils import logger, mask

OpKind = Literal["W", "R", "WIN", "IDLE"]


class TraceOp(NamedTuple):
    """
    One cycle-stamped operation.

    A write carries ``addr`` (1R-1W) or ``x``/``y`` (parallel access) and ``data``;
    ``R`` carries ``addr``; ``WIN`` carries the window origin.
    """

    cycle: int
    kind: OpKind
    addr: Optional[int] = None
    x: Optional[int] = None
    y: Optional[int] = None
    data: Optional[int] = None

    @property
    def port(self) -> str:
        return {"W": "write", "R": "read", "WIN": "read", "IDLE": "idle"}[self.kind]

    def text(self) -> str:
        if self.kind == "W" and self.addr is not None:
            return f"W {self.addr} {self.data:x}"
        if self.kind == "W":
            return f"W {self.x} {self.y} {self.data:x}"
        if self.kind == "R":
            return f"R {self.addr}"
        if self.kind == "WIN":
            return f"WIN {self.x} {self.y}"
        return "IDLE"


@dataclass(frozen=True)
class SimTrace:
    """
    Ordered operations; cycle stamps never decrease and each cycle holds at most
    one read-port and one write-port operation.
    """

    ops: Tuple[TraceOp, ...] = ()

    def __post_init__(self) -> None:
        last = -1
        used: Dict[str, int] = {}
        for op in self.ops:
            if op.cycle < last or op.cycle < 0:
                raise TraceError(f"cycle {op.cycle} is out of order")
            if op.cycle != last:
                used = {}
                last = op.cycle
            used[op.port] = used.get(op.port, 0) + 1
            if used[op.port] > 1:
                raise TraceError(f"cycle {op.cycle}: two {op.port} operations")
            if (op.kind == "IDLE" and len(used) > 1) or (op.kind != "IDLE" and "idle" in used):
                raise TraceError(f"cycle {op.cycle}: IDLE shares the cycle")

    @property
    def cycles(self) -> int:
        return self.ops[-1].cycle + 1 if self.ops else 0

    def by_cycle(self) -> Dict[int, List[TraceOp]]:
        grouped: DefaultDict[int, List[TraceOp]] = defaultdict(list)
        for op in self.ops:
            grouped[op.cycle].append(op)
        return dict(grouped)

    def __len__(self) -> int:
        return sum(1 for op in self.ops if op.kind != "IDLE")


def _parse_op(cycle: int, text: str) -> TraceOp:
    words = text.split()
    kind, args = words[0].upper(), words[1:]
    if kind == "W" and len(args) == 2:
        return TraceOp(cycle, "W", addr=int(args[0]), data=int(args[1], 16))
    if kind == "W" and len(args) == 3:
        return TraceOp(cycle, "W", x=int(args[0]), y=int(args[1]), data=int(args[2], 16))
    if kind == "R" and len(args) == 1:
        return TraceOp(cycle, "R", addr=int(args[0]))
    if kind == "WIN" and len(args) == 2:
        return TraceOp(cycle, "WIN", x=int(args[0]), y=int(args[1]))
    if kind == "IDLE" and not args:
        return TraceOp(cycle, "IDLE")
    raise ValueError(f"malformed operation '{text}'")


def parse_trace(text: str, source: str = "<trace>") -> SimTrace:
    """
    Parses a trace: one cycle per line, operations of one cycle separated by ``;``,
    an optional ``@<cycle>`` prefix jumping ahead to an explicit cycle.

    Raises:
        TraceError: On malformed lines, decreasing cycles or port conflicts.
    """
    ops: List[TraceOp] = []
    cycle = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("@"):
                stamp, _, line = line[1:].partition(" ")
                stamp_cycle = int(stamp)
                if stamp_cycle < cycle:
                    raise ValueError(f"cycle {stamp_cycle} is before cycle {cycle}")
                cycle = stamp_cycle
            ops.extend(_parse_op(cycle, part) for part in line.split(";") if part.strip())
        except ValueError as exc:
            raise TraceError(f"{source}:{lineno}: {exc}")
        cycle += 1
    try:
        return SimTrace(tuple(ops))
    except TraceError as exc:
        raise TraceError(f"{source}: {exc.message}")


def read_trace(path: Union[str, Path]) -> SimTrace:
    return parse_trace(Path(path).read_text(encoding="utf-8"), str(path))


def format_trace(trace: SimTrace) -> str:
    lines: List[str] = []
    expected = 0
    for cycle, ops in sorted(trace.by_cycle().items()):
        body = " ; ".join(op.text() for op in ops)
        lines.append(body if cycle == expected else f"@{cycle} {body}")
        expected = cycle + 1
    return "\n".join(lines) + ("\n" if lines else "")


def write_trace(trace: SimTrace, path: Union[str, Path]) -> None:
    Path(path).write_text(format_trace(trace), encoding="utf-8")


def random_sram_trace(
    words: int,
    bits: int,
    ops: int,
    seed: int = 0,
    write_fraction: float = 0.5,
    dual_fraction: float = 0.25,
) -> SimTrace:
    """
    Generates a seeded random 1R-1W trace.

    Args:
        words (int): Address range.
        bits (int): Data width.
        ops (int): Number of cycles.
        seed (int): Generator seed.
        write_fraction (float): Probability of a write-only cycle.
        dual_fraction (float): Probability of a cycle with both a read and a write.

    Returns:
        SimTrace: One or two operations per cycle.
    """
    rng = np.random.default_rng(seed)
    draws = rng.random(ops)
    raddrs = rng.integers(0, words, size=ops)
    waddrs = rng.integers(0, words, size=ops)
    data = rng.integers(0, 1 << min(bits, 62), size=ops, dtype=np.int64)
    result: List[TraceOp] = []
    for cycle in range(ops):
        draw = float(draws[cycle])
        value = int(data[cycle]) & mask(bits)
        if draw < dual_fraction:
            result.append(TraceOp(cycle, "R", addr=int(raddrs[cycle])))
            result.append(TraceOp(cycle, "W", addr=int(waddrs[cycle]), data=value))
        elif draw < dual_fraction + write_fraction:
            result.append(TraceOp(cycle, "W", addr=int(waddrs[cycle]), data=value))
        else:
            result.append(TraceOp(cycle, "R", addr=int(raddrs[cycle])))
    return SimTrace(tuple(result))


def random_pa_trace(
    width: int,
    height: int,
    pixel_bits: int,
    ops: int,
    seed: int = 0,
    write_fraction: float = 0.5,
) -> SimTrace:
    """Seeded random pixel writes and window reads over a width x height image."""
    rng = np.random.default_rng(seed)
    draws = rng.random(ops)
    xs = rng.integers(0, width, size=(ops, 2))
    ys = rng.integers(0, height, size=(ops, 2))
    data = rng.integers(0, 1 << pixel_bits, size=ops, dtype=np.int64)
    result: List[TraceOp] = []
    for cycle in range(ops):
        if float(draws[cycle]) < write_fraction:
            result.append(TraceOp(cycle, "W", x=int(xs[cycle, 0]), y=int(ys[cycle, 0]), data=int(data[cycle])))
        else:
            result.append(TraceOp(cycle, "WIN", x=int(xs[cycle, 1]), y=int(ys[cycle, 1])))
    return SimTrace(tuple(result))


def preload_trace(writes: Iterable[TraceOp], reads: Iterable[TraceOp]) -> SimTrace:
    """Concatenates write then read operations, one per cycle."""
    ops = [op._replace(cycle=cycle) for cycle, op in enumerate(list(writes) + list(reads))]
    logger.debug(f"Trace: {len(ops)} operations")
    return SimTrace(tuple(ops))
