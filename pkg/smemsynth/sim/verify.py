from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from smemsynth.base import SimulationError
from smemsynth.netlist import NetlistIR
from smemsynth.pa import PAWindowSpec, pack_window, random_image, reference_window
from smemsynth.utils import logger, mask

from .engine import Simulator, Value
from .trace import SimTrace, TraceOp, preload_trace


@dataclass
class PAVerifyReport:
    """
    Result of checking a parallel-access netlist at every window origin.

    Attributes:
        design (str): ``pa_sm`` or ``pa_tm``.
        origins (int): Windows read.
        mismatches (int): Windows that differed from the reference.
        conflicts (int): Bank conflicts observed by the simulator.
        failures (List[Tuple[int, int]]): Origins of the first mismatching windows.
    """

    design: str
    origins: int = 0
    mismatches: int = 0
    conflicts: int = 0
    failures: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and self.conflicts == 0

    def summary(self) -> str:
        return f"mismatches={self.mismatches} conflicts={self.conflicts}"


def pa_spec_of(ir: NetlistIR) -> PAWindowSpec:
    """Recovers the geometry recorded in a parallel-access netlist's attributes."""
    if ir.attrs.get("design") not in ("pa_sm", "pa_tm"):
        raise SimulationError(f"{ir.top}: not a parallel-access netlist")
    return PAWindowSpec(
        m=ir.attr_int("m"), n=ir.attr_int("n"), a=ir.attr_int("a"), b=ir.attr_int("b"),
        pixel_bits=ir.attr_int("pixel_bits"),
    )


def verify_pa(ir: NetlistIR, seed: int = 0, max_failures: int = 8) -> PAVerifyReport:
    """
    Fills a random image through the write port, reads the window at every
    origin and compares each against the reference sub-array.

    Args:
        ir (NetlistIR): An SM or TM netlist.
        seed (int): Image seed.
        max_failures (int): Origins kept in the report.

    Returns:
        PAVerifyReport: Mismatch and conflict counts.
    """
    spec = pa_spec_of(ir)
    boundary = ir.attrs.get("boundary", "wrap")
    image = random_image(spec, seed)
    origins = [(x, y) for x in range(spec.width) for y in range(spec.height)]
    writes = [TraceOp(0, "W", x=x, y=y, data=int(image[x, y])) for x, y in origins]
    reads = [TraceOp(0, "WIN", x=x, y=y) for x, y in origins]
    trace = preload_trace(writes, reads)

    result = Simulator(ir).run(trace)
    report = PAVerifyReport(design=ir.attrs.get("design", ir.top), origins=len(origins), conflicts=result.conflicts)
    for (x, y), (_, value) in zip(origins, result.outputs):
        expected = pack_window(spec, reference_window(image, spec, x, y, boundary))
        if value != expected:
            report.mismatches += 1
            if len(report.failures) < max_failures:
                report.failures.append((x, y))
    if len(result.outputs) != len(origins):
        report.mismatches += abs(len(origins) - len(result.outputs))

    log = logger.info if report.passed else logger.error
    log(f"Verify: {report.design} {spec.label} {boundary} {report.summary()}")
    return report


def reference_sram_outputs(words: int, bits: int, trace: SimTrace) -> List[Tuple[int, Value]]:
    """
    Flat memory model of a 1R-1W SRAM.

    A read returns the value before the same cycle's write; a never-written
    word reads as all ones.
    """
    memory: Dict[int, int] = {}
    outputs: List[Tuple[int, Value]] = []
    for cycle, ops in sorted(trace.by_cycle().items()):
        for op in ops:
            if op.kind == "R":
                if op.addr is None or not 0 <= op.addr < words:
                    raise SimulationError(f"read address {op.addr} out of range [0, {words})")
                outputs.append((cycle + 1, memory.get(op.addr, mask(bits))))
        for op in ops:
            if op.kind == "W":
                memory[op.addr] = op.data & mask(bits)
    return outputs


@dataclass
class SRAMVerifyReport:
    reads: int
    mismatches: int
    first_mismatch: Optional[Tuple[int, Value, Value]] = None

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


def verify_sram(ir: NetlistIR, trace: SimTrace) -> SRAMVerifyReport:
    """Simulates a 1R-1W netlist and compares its read data with the flat memory model."""
    words, bits = ir.attr_int("words"), ir.attr_int("bits")
    expected = reference_sram_outputs(words, bits, trace)
    actual = Simulator(ir).run(trace).outputs
    report = SRAMVerifyReport(reads=len(expected), mismatches=abs(len(expected) - len(actual)))
    for (cycle, want), (_, got) in zip(expected, actual):
        if want != got:
            report.mismatches += 1
            if report.first_mismatch is None:
                report.first_mismatch = (cycle, want, got)
    if not report.passed:
        logger.error(f"Verify: {ir.top} {report.mismatches} of {report.reads} reads differ")
    return report


def image_from_banks(spec: PAWindowSpec, sim: Simulator) -> np.ndarray:
    """Reassembles the stored image of an SM netlist from its BA+ rows."""
    image = np.zeros((spec.width, spec.height), dtype=np.int64)
    for x in range(spec.width):
        for y in range(spec.height):
            tag = f"p{x & mask(spec.a)}_q{y & mask(spec.b)}"
            value = sim.peek(f"ba_{tag}_k{y >> spec.b}", x >> spec.a)
            image[x, y] = -1 if value is None else value
    return image
