import heapq
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from smemsynth.baplus import MacroLibrary, TechParams
from smemsynth.base import NetlistError, SimulationError
from smemsynth.netlist import HIERARCHY_SEP, SEQUENTIAL_KINDS, Cell, NetlistIR, ParamValue, flatten
from smemsynth.utils import logger, mask, onehot_index

from .trace import SimTrace, TraceOp

Value = Optional[int]

# combinational cells whose activations cost energy
ACTIVE_KINDS = ("decoder", "pa_increment", "addr_translate", "pa_align")


@dataclass
class SimResult:
    """
    Outcome of one simulation run.

    Attributes:
        outputs (List[Tuple[int, Value]]): (cycle, data) per read, one cycle after the read.
        activity (Dict[str, Dict[str, int]]): Event counts per cell.
        cells (Dict[str, Tuple[str, Dict[str, ParamValue]]]): Kind and parameters of every active cell.
        cycles (int): Simulated cycles.
        reads (int): Read-port operations.
        writes (int): Write-port operations.
        conflicts (int): Bank read collisions plus tri-state contentions.
        poison_reads (int): Reads of never-written rows.
        attrs (Dict[str, str]): Design attributes of the netlist.
        e_total (float): Energy in fJ, filled by simulate.
    """

    outputs: List[Tuple[int, Value]] = field(default_factory=list)
    activity: Dict[str, Dict[str, int]] = field(default_factory=dict)
    cells: Dict[str, Tuple[str, Dict[str, ParamValue]]] = field(default_factory=dict)
    cycles: int = 0
    reads: int = 0
    writes: int = 0
    conflicts: int = 0
    poison_reads: int = 0
    attrs: Dict[str, str] = field(default_factory=dict)
    e_total: float = 0.0


class Simulator:
    """
    Cycle-based simulator of a generated netlist.

    Every cycle applies the trace operations to the ports, settles the
    combinational cells in levelized order (only cells whose inputs changed
    are re-evaluated), then clocks all BA+ arrays and registers at once. A BA+
    read samples the array before the same edge's write, so a read of the
    address being written returns the old data.

    Methods:
        step(cycle, ops) -> None:
            Simulates one cycle.

        run(trace) -> SimResult:
            Simulates a whole trace.

        peek(cell, row) -> Value:
            Backdoor read of a BA+ row.
    """

    def __init__(self, ir: NetlistIR) -> None:
        self.ir = ir
        self.flat = flatten(ir)
        ports = self.flat.ports
        if {"raddr", "waddr", "rdata"} <= ports.keys():
            self.mode, self.out_port = "sram", "rdata"
            self.words = int(ir.attrs.get("words", 1 << ports["raddr"].width))
        elif {"x", "y", "wx", "wy", "win"} <= ports.keys():
            self.mode, self.out_port = "pa", "win"
            self.words = 0
        else:
            raise NetlistError(f"{ir.top}: neither a 1R-1W nor a parallel-access interface")

        self.values: Dict[str, Value] = {name: None for name in self.flat.nets}
        self.contrib: Dict[str, Dict[str, Value]] = {
            name: {} for name, net in self.flat.nets.items() if len(net.drivers) > 1
        }
        self.sequential = [cell for cell in self.flat.cells.values() if cell.kind in SEQUENTIAL_KINDS]
        self.comb = self._levelize([cell for cell in self.flat.cells.values() if cell.kind not in SEQUENTIAL_KINDS])
        self.counted = [cell for cell in self.comb if cell.kind in ACTIVE_KINDS]
        self.fanout: Dict[str, List[int]] = {name: [] for name in self.flat.nets}
        for index, cell in enumerate(self.comb):
            for pin, net in cell.pins.items():
                if self.flat.pin_role(cell.name, pin) == "sink":
                    self.fanout[net].append(index)

        self.memories: Dict[str, List[Value]] = {}
        self.groups: Dict[str, str] = {}
        for cell in self.sequential:
            if cell.kind == "baplus_instance":
                self.memories[cell.name] = [None] * cell.param("B")
                prefix = cell.name.rpartition(HIERARCHY_SEP)[0]
                bank = str(cell.params.get("bank", cell.name))
                self.groups[cell.name] = f"{prefix}{HIERARCHY_SEP}{bank}" if prefix else bank

        self.evaluators: Dict[str, Callable[[Cell], Dict[str, Value]]] = {
            "decoder": self._decoder,
            "wordline_gate": self._wordline_gate,
            "tristate_driver": self._tristate_driver,
            "column_mux": self._column_mux,
            "pa_increment": self._pa_increment,
            "addr_translate": self._addr_translate,
            "pa_align": self._pa_align,
            "and": self._gate,
            "or": self._gate,
            "inv": self._inv,
        }
        self.result = SimResult(attrs=dict(ir.attrs))
        self._poisoned: Set[str] = set()
        self._pending: List[int] = []
        self._queued: Set[int] = set()

        for name, port in ports.items():
            if port.direction == "in":
                self.values[name] = 0
        for cell in self.sequential:
            if cell.kind == "baplus_instance":
                self.values[cell.pins["rv"]] = 0
            else:
                self.values[cell.pins["q"]] = 0
        self._schedule(range(len(self.comb)))
        self._settle()

    def _levelize(self, cells: List[Cell]) -> List[Cell]:
        drivers: Dict[str, List[str]] = {}
        for cell in cells:
            for pin, net in cell.pins.items():
                if self.flat.pin_role(cell.name, pin) == "drive":
                    drivers.setdefault(net, []).append(cell.name)
        preds: Dict[str, Set[str]] = {cell.name: set() for cell in cells}
        for cell in cells:
            for pin, net in cell.pins.items():
                if self.flat.pin_role(cell.name, pin) == "sink":
                    preds[cell.name].update(drivers.get(net, ()))

        by_name = {cell.name: cell for cell in cells}
        succs: Dict[str, List[str]] = {name: [] for name in preds}
        for name, sources in preds.items():
            for source in sources:
                succs[source].append(name)
        remaining = {name: len(sources) for name, sources in preds.items()}
        ready = sorted(name for name, count in remaining.items() if count == 0)
        heapq.heapify(ready)
        order: List[Cell] = []
        while ready:
            name = heapq.heappop(ready)
            order.append(by_name[name])
            for succ in succs[name]:
                remaining[succ] -= 1
                if remaining[succ] == 0:
                    heapq.heappush(ready, succ)
        if len(order) != len(cells):
            raise NetlistError(f"{self.ir.top}: combinational loop")
        return order

    def v(self, cell: Cell, pin: str) -> Value:
        net = cell.pins.get(pin)
        return None if net is None else self.values[net]

    def _schedule(self, indices) -> None:
        for index in indices:
            if index not in self._queued:
                self._queued.add(index)
                heapq.heappush(self._pending, index)

    def _set(self, net: str, value: Value) -> None:
        if self.values[net] != value:
            self.values[net] = value
            self._schedule(self.fanout[net])

    def _settle(self) -> None:
        while self._pending:
            index = heapq.heappop(self._pending)
            self._queued.discard(index)
            cell = self.comb[index]
            for pin, value in self.evaluators[cell.kind](cell).items():
                net = cell.pins[pin]
                if net in self.contrib:
                    self.contrib[net][cell.name] = value
                    active = [item for item in self.contrib[net].values() if item is not None]
                    value = active[0] if len(active) == 1 else None
                self._set(net, value)

    # combinational cells

    def _decoder(self, cell: Cell) -> Dict[str, Value]:
        lsb, width = cell.param("lsb"), cell.param("width")
        out: Dict[str, Value] = {}
        for a_pin, en_pin, y_pin in (("a", "en", "y"), ("a2", "en2", "y2")):
            if y_pin in cell.pins:
                address = self.v(cell, a_pin) or 0
                out[y_pin] = 1 << ((address >> lsb) & mask(width)) if self.v(cell, en_pin) == 1 else 0
        return out

    def _selected(self, cell: Cell) -> bool:
        for index in range(3):
            if f"s{index}" in cell.pins:
                value = self.v(cell, f"s{index}") or 0
                if value & cell.param(f"s{index}_mask") != cell.param(f"s{index}_eq"):
                    return False
        return True

    def _wordline_gate(self, cell: Cell) -> Dict[str, Value]:
        wordlines = (self.v(cell, "wl") or 0) >> cell.param("lsb")
        return {"y": wordlines & mask(cell.param("width")) if self._selected(cell) else 0}

    def _tristate_driver(self, cell: Cell) -> Dict[str, Value]:
        enable = self.v(cell, "en") or 0
        return {"q": self.v(cell, "d") if (enable >> cell.param("bit", 0)) & 1 else None}

    def _column_mux(self, cell: Cell) -> Dict[str, Value]:
        C, W, bits = cell.param("C"), cell.param("W"), cell.param("bits")
        shift = 0
        if "sel" in cell.pins:
            sel = self.v(cell, "sel")
            if sel is None:
                return {"y": None} if cell.params["dir"] == "read" else self._column_none(C, cell)
            shift = ((sel >> cell.param("lsb", 0)) & mask(cell.param("width"))) * bits

        if cell.params["dir"] == "read":
            row = 0
            for c in range(C):
                column = self.v(cell, f"d{c}")
                if column is None:
                    return {"y": None}
                row |= column << (c * W)
            return {"y": (row >> shift) & mask(bits)}

        data = (self.v(cell, "d") or 0) << shift
        write_mask = mask(bits) << shift
        out: Dict[str, Value] = {}
        for c in range(C):
            out[f"y{c}"] = (data >> (c * W)) & mask(W)
            if f"m{c}" in cell.pins:
                out[f"m{c}"] = (write_mask >> (c * W)) & mask(W)
        return out

    @staticmethod
    def _column_none(C: int, cell: Cell) -> Dict[str, Value]:
        out: Dict[str, Value] = {f"y{c}": None for c in range(C)}
        out.update({f"m{c}": 0 for c in range(C) if f"m{c}" in cell.pins})
        return out

    @staticmethod
    def _rotate(onehot: int, size: int, carry: bool) -> int:
        if not carry:
            return onehot
        return ((onehot << 1) | (onehot >> (size - 1))) & mask(size)

    def _pa_increment(self, cell: Cell) -> Dict[str, Value]:
        x, y = self.v(cell, "x") or 0, self.v(cell, "y") or 0
        carry_x = cell.param("p") < (x & mask(cell.param("a")))
        carry_y = cell.param("q") < (y & mask(cell.param("b")))
        return {
            "rx": self._rotate(self.v(cell, "ox") or 0, cell.param("rows"), carry_x),
            "ry": self._rotate(self.v(cell, "oy") or 0, cell.param("cols"), carry_y),
        }

    def _addr_translate(self, cell: Cell) -> Dict[str, Value]:
        a, b, m, n = (cell.param(key) for key in ("a", "b", "m", "n"))
        p, q = cell.param("p"), cell.param("q")
        rows, cols = 1 << (m - a), 1 << (n - b)
        x, y = self.v(cell, "x") or 0, self.v(cell, "y") or 0
        row = ((x >> a) + (p < (x & mask(a)))) % rows
        col = ((y >> b) + (q < (y & mask(b)))) % cols
        wx, wy = self.v(cell, "wx") or 0, self.v(cell, "wy") or 0
        hit = (wx & mask(a)) == p and (wy & mask(b)) == q
        return {
            "raddr": col * rows + row,
            "waddr": (wy >> b) * rows + (wx >> a),
            "wen_o": 1 if self.v(cell, "wen") == 1 and hit else 0,
        }

    def _pa_align(self, cell: Cell) -> Dict[str, Value]:
        a, b, m, n, P = (cell.param(key) for key in ("a", "b", "m", "n", "P"))
        clamp = cell.params.get("boundary", "wrap") == "clamp"
        x, y = self.v(cell, "x") or 0, self.v(cell, "y") or 0
        word = 0
        for i in range(1 << a):
            for j in range(1 << b):
                di, dj = (min(i, mask(m) - x), min(j, mask(n) - y)) if clamp else (i, j)
                pixel = self.v(cell, f"d{(x + di) & mask(a)}_{(y + dj) & mask(b)}")
                if pixel is None:
                    return {"w": None}
                word |= pixel << (((i << b) | j) * P)
        return {"w": word}

    def _gate(self, cell: Cell) -> Dict[str, Value]:
        inputs = [self.v(cell, f"i{index}") or 0 for index in range(cell.param("n"))]
        value = inputs[0]
        for item in inputs[1:]:
            value = value & item if cell.kind == "and" else value | item
        return {"y": value}

    def _inv(self, cell: Cell) -> Dict[str, Value]:
        value = self.v(cell, "a")
        width = self.flat.nets[cell.pins["y"]].width
        return {"y": None if value is None else ~value & mask(width)}

    # clock edge

    def _count(self, cell: Cell, event: str) -> None:
        self.result.activity.setdefault(cell.name, Counter())[event] += 1
        self.result.cells.setdefault(cell.name, (cell.kind, dict(cell.params)))

    def _row(self, cell: Cell, wordlines: int) -> int:
        try:
            return onehot_index(wordlines)
        except ValueError:
            raise SimulationError(f"{cell.name}: wordlines {wordlines:#x} are not one-hot")

    def _edge(self, reading: bool) -> None:
        for net, contrib in self.contrib.items():
            if sum(1 for item in contrib.values() if item is not None) > 1:
                self.result.conflicts += 1
                logger.debug(f"Sim: contention on {net}")

        for cell in self.counted:
            if cell.kind == "decoder":
                for en_pin, event in (("en", "read"), ("en2", "write")):
                    if self.v(cell, en_pin) == 1:
                        self._count(cell, event)
            elif cell.kind == "pa_increment" and self.v(cell, "ox"):
                self._count(cell, "incr")
            elif cell.kind in ("addr_translate", "pa_align") and reading:
                self._count(cell, "read")

        updates: List[Tuple[str, Value]] = []
        bank_reads: Counter = Counter()
        for cell in self.sequential:
            if cell.kind == "output_reg":
                if "en" not in cell.pins or self.v(cell, "en") == 1:
                    updates.append((cell.pins["q"], self.v(cell, "d")))
                continue

            memory = self.memories[cell.name]
            W = cell.param("W")
            rwl, wwl = self.v(cell, "rwl") or 0, self.v(cell, "wwl") or 0
            if rwl:
                row = self._row(cell, rwl)
                data = memory[row]
                if data is None:
                    data = mask(W)
                    self.result.poison_reads += 1
                    if cell.name not in self._poisoned:
                        self._poisoned.add(cell.name)
                        logger.warning(f"Sim: uninitialized read of {cell.name} row {row}")
                # columns above the data net are not wired out
                updates.append((cell.pins["dout"], data & mask(self.flat.nets[cell.pins["dout"]].width)))
                bank_reads[self.groups[cell.name]] += 1
                self._count(cell, "read")
            updates.append((cell.pins["rv"], 1 if rwl else 0))
            if wwl:
                row = self._row(cell, wwl)
                din = self.v(cell, "din") or 0
                bit_mask = self.v(cell, "dmask") if "dmask" in cell.pins else mask(W)
                bit_mask = mask(W) if bit_mask is None else bit_mask
                old = mask(W) if memory[row] is None else memory[row]
                memory[row] = (old & ~bit_mask) | (din & bit_mask)
                self._count(cell, "write")

        self.result.conflicts += sum(count - 1 for count in bank_reads.values() if count > 1)
        for net, value in updates:
            self._set(net, value)
        self._settle()

    # trace application

    def _apply(self, op: TraceOp) -> None:
        ports = self.flat.ports
        if op.kind == "R":
            if self.mode != "sram" or op.addr is None:
                raise SimulationError("R needs a 1R-1W netlist")
            if not 0 <= op.addr < self.words:
                raise SimulationError(f"read address {op.addr} out of range [0, {self.words})")
            self._set("ren", 1)
            self._set("raddr", op.addr)
        elif op.kind == "WIN":
            if self.mode != "pa":
                raise SimulationError("WIN needs a parallel-access netlist")
            self._coordinate(op.x, op.y, "x", "y")
            self._set("ren", 1)
        elif op.kind == "W":
            if self.mode == "sram":
                if op.addr is None or not 0 <= op.addr < self.words:
                    raise SimulationError(f"write address {op.addr} out of range [0, {self.words})")
                self._set("waddr", op.addr)
            else:
                self._coordinate(op.x, op.y, "wx", "wy")
            if op.data is None or op.data >> ports["wdata"].width:
                raise SimulationError(f"write data {op.data} wider than {ports['wdata'].width} bits")
            self._set("wen", 1)
            self._set("wdata", op.data)

    def _coordinate(self, x: Optional[int], y: Optional[int], x_port: str, y_port: str) -> None:
        ports = self.flat.ports
        if x is None or y is None:
            raise SimulationError("coordinate operation without (x, y)")
        if not (0 <= x < 1 << ports[x_port].width and 0 <= y < 1 << ports[y_port].width):
            raise SimulationError(f"coordinate ({x}, {y}) outside the image")
        self._set(x_port, x)
        self._set(y_port, y)

    def step(self, cycle: int, ops: Sequence[TraceOp] = ()) -> None:
        self._set("ren", 0)
        self._set("wen", 0)
        reading = False
        for op in ops:
            self._apply(op)
            reading = reading or op.kind in ("R", "WIN")
            self.result.reads += op.kind in ("R", "WIN")
            self.result.writes += op.kind == "W"
        self._settle()
        self._edge(reading)
        if reading:
            self.result.outputs.append((cycle + 1, self.values[self.out_port]))
        self.result.cycles = cycle + 1

    def run(self, trace: SimTrace) -> SimResult:
        grouped = trace.by_cycle()
        for cycle in range(trace.cycles):
            self.step(cycle, grouped.get(cycle, ()))
        return self.result

    def peek(self, cell: str, row: int) -> Value:
        try:
            return self.memories[cell][row]
        except (KeyError, IndexError):
            raise SimulationError(f"no BA+ row {cell}[{row}]")


def simulate(
    ir: NetlistIR,
    trace: SimTrace,
    lib: Optional[MacroLibrary] = None,
    tech: Optional[TechParams] = None,
) -> SimResult:
    """
    Simulates a trace on a netlist and accounts its energy.

    Args:
        ir (NetlistIR): A well-formed 1R-1W or parallel-access netlist.
        trace (SimTrace): The operations.
        lib (Optional[MacroLibrary]): Source of BA+ energies, generated variants when omitted.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        SimResult: Outputs, activity, conflicts and e_total.

    Raises:
        SimulationError: On out-of-range addresses or data.
    """
    from .energy import energy_report

    result = Simulator(ir).run(trace)
    result.e_total = energy_report(result, lib, tech)
    logger.debug(f"Sim: {result.cycles} cycles, {len(result.outputs)} outputs, {result.e_total:.3f} fJ")
    return result
