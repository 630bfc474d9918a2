from pathlib import Path
from typing import Callable, Dict, List, Set, Union

from smemsynth.base import NetlistError
from smemsynth.utils import logger, mask

from .ir import Cell, Module, NetlistIR


def rng(width: int) -> str:
    return f"[{width - 1}:0]"


def bits_of(net: str, lsb: int, width: int) -> str:
    return f"{net}[{lsb + width - 1}:{lsb}]"


def zeros(width: int) -> str:
    return f"{{{width}{{1'b0}}}}"


def baplus_module(variant: str, B: int, W: int) -> List[str]:
    """Behavioral BA+: registered read of the selected row, bit-masked synchronous write, all-ones power-up."""
    return [
        f"module {variant} (clk, rwl, wwl, din, dmask, dout, rv);",
        "  input clk;",
        f"  input {rng(B)} rwl;",
        f"  input {rng(B)} wwl;",
        f"  input {rng(W)} din;",
        f"  input {rng(W)} dmask;",
        f"  output reg {rng(W)} dout;",
        "  output reg [0:0] rv;",
        f"  reg {rng(W)} mem [0:{B - 1}];",
        "  integer i;",
        "  initial begin",
        f"    for (i = 0; i < {B}; i = i + 1) mem[i] = {{{W}{{1'b1}}}};",
        f"    dout = {zeros(W)};",
        "    rv = 1'b0;",
        "  end",
        "  always @(posedge clk) begin",
        "    rv <= |rwl;",
        f"    for (i = 0; i < {B}; i = i + 1) if (rwl[i]) dout <= mem[i];",
        f"    for (i = 0; i < {B}; i = i + 1) if (wwl[i]) mem[i] <= (mem[i] & ~dmask) | (din & dmask);",
        "  end",
        "endmodule",
    ]


class ModuleEmitter:
    """Renders one Module as an elaborated Verilog-2001 module."""

    def __init__(self, module: Module) -> None:
        self.module = module
        self.body: List[str] = []
        self.handlers: Dict[str, Callable[[Cell], None]] = {
            "baplus_instance": self.baplus_instance,
            "decoder": self.decoder,
            "wordline_gate": self.wordline_gate,
            "tristate_driver": self.tristate_driver,
            "column_mux": self.column_mux,
            "output_reg": self.output_reg,
            "pa_increment": self.pa_increment,
            "pa_align": self.pa_align,
            "addr_translate": self.addr_translate,
            "and": self.gate,
            "or": self.gate,
            "inv": self.inv,
            "submodule": self.submodule,
        }

    def width(self, net: str) -> int:
        return self.module.nets[net].width

    def pin(self, cell: Cell, name: str) -> str:
        try:
            return cell.pins[name]
        except KeyError:
            raise NetlistError(f"{cell.name}: pin '{name}' is not connected")

    def emit(self) -> List[str]:
        module = self.module
        ports = sorted(module.ports)
        lines = [f"module {module.name} ({', '.join(ports)});"]
        for name in ports:
            port = module.ports[name]
            direction = "input" if port.direction == "in" else "output"
            lines.append(f"  {direction} {rng(port.width)} {name};")
        for name in sorted(module.nets):
            if name not in module.ports:
                lines.append(f"  wire {rng(module.nets[name].width)} {name};")
        for name in sorted(module.cells):
            cell = module.cells[name]
            self.body.append(f"  // {cell.name}: {cell.kind}")
            self.handlers[cell.kind](cell)
        lines.extend(self.body)
        lines.append("endmodule")
        return lines

    def baplus_instance(self, cell: Cell) -> None:
        W = cell.param("W")
        dmask = cell.pins.get("dmask", f"{{{W}{{1'b1}}}}")
        din, dout = self.pin(cell, "din"), self.pin(cell, "dout")
        if self.width(din) < W:
            din = f"{{{zeros(W - self.width(din))}, {din}}}"
        if self.width(dout) < W:
            # unused upper columns stay inside the instance
            full = f"{cell.name}_dout"
            self.body.append(f"  wire {rng(W)} {full};")
            self.body.append(f"  assign {dout} = {bits_of(full, 0, self.width(dout))};")
            dout = full
        conns = [
            f".clk({self.pin(cell, 'clk')})",
            f".rwl({self.pin(cell, 'rwl')})",
            f".wwl({self.pin(cell, 'wwl')})",
            f".din({din})",
            f".dmask({dmask})",
            f".dout({dout})",
            f".rv({self.pin(cell, 'rv')})",
        ]
        self.body.append(f"  {cell.params['variant']} {cell.name} ({', '.join(conns)});")

    def decoder(self, cell: Cell) -> None:
        lsb, width = cell.param("lsb"), cell.param("width")
        lines = 1 << width
        for a_pin, en_pin, y_pin in (("a", "en", "y"), ("a2", "en2", "y2")):
            if y_pin not in cell.pins:
                continue
            y, en = cell.pins[y_pin], self.pin(cell, en_pin)
            if width == 0:
                self.body.append(f"  assign {y} = {en} ? 1'b1 : 1'b0;")
                continue
            field = bits_of(self.pin(cell, a_pin), lsb, width)
            self.body.append(f"  assign {y} = {en} ? ({lines}'d1 << {field}) : {zeros(lines)};")

    def _conditions(self, cell: Cell) -> List[str]:
        terms = []
        for index in range(3):
            sel = cell.pins.get(f"s{index}")
            if sel is None:
                continue
            sel_mask = cell.param(f"s{index}_mask")
            sel_eq = cell.param(f"s{index}_eq")
            width = self.width(sel)
            terms.append(f"(({sel} & {width}'d{sel_mask}) == {width}'d{sel_eq})")
        return terms

    def wordline_gate(self, cell: Cell) -> None:
        lsb, width = cell.param("lsb"), cell.param("width")
        wordlines = bits_of(self.pin(cell, "wl"), lsb, width)
        terms = self._conditions(cell)
        y = self.pin(cell, "y")
        if terms:
            self.body.append(f"  assign {y} = ({' && '.join(terms)}) ? {wordlines} : {zeros(width)};")
        else:
            self.body.append(f"  assign {y} = {wordlines};")

    def tristate_driver(self, cell: Cell) -> None:
        q = self.pin(cell, "q")
        enable = f"{self.pin(cell, 'en')}[{cell.param('bit', 0)}]"
        self.body.append(f"  assign {q} = {enable} ? {self.pin(cell, 'd')} : {{{self.width(q)}{{1'bz}}}};")

    def column_mux(self, cell: Cell) -> None:
        C, W, bits = cell.param("C"), cell.param("W"), cell.param("bits")
        row_width = C * W
        shift = "0"
        if "sel" in cell.pins:
            shift = f"({bits_of(cell.pins['sel'], cell.param('lsb', 0), cell.param('width'))} * {bits})"

        if cell.params["dir"] == "read":
            row = ", ".join(self.pin(cell, f"d{c}") for c in reversed(range(C)))
            self.body.append(f"  assign {self.pin(cell, 'y')} = {{{row}}} >> {shift};")
            return

        row_net, mask_net = f"{cell.name}_row", f"{cell.name}_mask"
        self.body.append(f"  wire {rng(row_width)} {row_net} = {self.pin(cell, 'd')} << {shift};")
        self.body.append(f"  wire {rng(row_width)} {mask_net} = {{{bits}{{1'b1}}}} << {shift};")
        for c in range(C):
            self.body.append(f"  assign {self.pin(cell, f'y{c}')} = {bits_of(row_net, c * W, W)};")
            if f"m{c}" in cell.pins:
                self.body.append(f"  assign {cell.pins[f'm{c}']} = {bits_of(mask_net, c * W, W)};")

    def output_reg(self, cell: Cell) -> None:
        q = self.pin(cell, "q")
        reg = f"{cell.name}_r"
        self.body.append(f"  reg {rng(self.width(q))} {reg} = {zeros(self.width(q))};")
        guard = f"if ({cell.pins['en']}) " if "en" in cell.pins else ""
        self.body.append(f"  always @(posedge {self.pin(cell, 'clk')}) {guard}{reg} <= {self.pin(cell, 'd')};")
        self.body.append(f"  assign {q} = {reg};")

    def _rotate(self, onehot: str, size: int, coord: str, low_bits: int, index: int) -> str:
        if low_bits == 0 or size == 1:
            return onehot
        carry = f"({bits_of(coord, 0, low_bits)} > {low_bits}'d{index})"
        return f"{carry} ? {{{onehot}[{size - 2}:0], {onehot}[{size - 1}]}} : {onehot}"

    def pa_increment(self, cell: Cell) -> None:
        a, b = cell.param("a"), cell.param("b")
        rows, cols = cell.param("rows"), cell.param("cols")
        rx = self._rotate(self.pin(cell, "ox"), rows, self.pin(cell, "x"), a, cell.param("p"))
        ry = self._rotate(self.pin(cell, "oy"), cols, self.pin(cell, "y"), b, cell.param("q"))
        self.body.append(f"  assign {self.pin(cell, 'rx')} = {rx};")
        self.body.append(f"  assign {self.pin(cell, 'ry')} = {ry};")

    def addr_translate(self, cell: Cell) -> None:
        a, b, m, n = (cell.param(key) for key in ("a", "b", "m", "n"))
        p, q = cell.param("p"), cell.param("q")
        row, col = f"{cell.name}_row", f"{cell.name}_col"

        def advanced(coord: str, low: int, size: int, index: int) -> str:
            high = bits_of(coord, low, size - low)
            if low == 0:
                return high
            return f"{high} + ({bits_of(coord, 0, low)} > {low}'d{index})"

        # a window spanning a whole axis leaves no address bits on it
        read_fields, write_fields = [], []
        wx, wy = self.pin(cell, "wx"), self.pin(cell, "wy")
        for wire, coord, wcoord, low, size, index in ((col, "y", wy, b, n, q), (row, "x", wx, a, m, p)):
            if size == low:
                continue
            self.body.append(f"  wire {rng(size - low)} {wire} = {advanced(self.pin(cell, coord), low, size, index)};")
            read_fields.append(wire)
            write_fields.append(bits_of(wcoord, low, size - low))
        for pin, fields in (("raddr", read_fields), ("waddr", write_fields)):
            value = f"{{{', '.join(fields)}}}" if fields else "1'b0"
            self.body.append(f"  assign {self.pin(cell, pin)} = {value};")
        match = [self.pin(cell, "wen")]
        if a:
            match.append(f"({bits_of(wx, 0, a)} == {a}'d{p})")
        if b:
            match.append(f"({bits_of(wy, 0, b)} == {b}'d{q})")
        self.body.append(f"  assign {self.pin(cell, 'wen_o')} = {' & '.join(match)};")

    def pa_align(self, cell: Cell) -> None:
        a, b, m, n, P = (cell.param(key) for key in ("a", "b", "m", "n", "P"))
        clamp = cell.params.get("boundary", "wrap") == "clamp"
        x, y, out = self.pin(cell, "x"), self.pin(cell, "y"), self.pin(cell, "w")

        def coordinate(axis: str, coord: str, size: int, offset: int) -> str:
            name = f"{cell.name}_{axis}e{offset}"
            top = mask(size)
            if clamp and offset:
                expr = f"({coord} > {size}'d{top - offset}) ? {size}'d{top} : {coord} + {size}'d{offset}"
            else:
                expr = f"{coord} + {size}'d{offset}"
            self.body.append(f"  wire {rng(size)} {name} = {expr};")
            return name

        xs = [coordinate("x", x, m, i) for i in range(1 << a)]
        ys = [coordinate("y", y, n, j) for j in range(1 << b)]
        for i in range(1 << a):
            for j in range(1 << b):
                slot = (i << b) | j
                target = bits_of(out, slot * P, P)
                selector = [bits_of(xs[i], 0, a)] if a else []
                selector += [bits_of(ys[j], 0, b)] if b else []
                if not selector:
                    self.body.append(f"  assign {target} = {self.pin(cell, 'd0_0')};")
                    continue
                reg = f"{cell.name}_s{i}_{j}"
                self.body.append(f"  reg {rng(P)} {reg};")
                self.body.append("  always @* begin")
                self.body.append(f"    case ({{{', '.join(selector)}}})")
                for bank_p in range(1 << a):
                    for bank_q in range(1 << b):
                        self.body.append(
                            f"      {a + b}'d{(bank_p << b) | bank_q}: {reg} = {self.pin(cell, f'd{bank_p}_{bank_q}')};"
                        )
                self.body.append(f"      default: {reg} = {{{P}{{1'bx}}}};")
                self.body.append("    endcase")
                self.body.append("  end")
                self.body.append(f"  assign {target} = {reg};")

    def gate(self, cell: Cell) -> None:
        operator = " & " if cell.kind == "and" else " | "
        inputs = [self.pin(cell, f"i{index}") for index in range(cell.param("n"))]
        self.body.append(f"  assign {self.pin(cell, 'y')} = {operator.join(inputs)};")

    def inv(self, cell: Cell) -> None:
        self.body.append(f"  assign {self.pin(cell, 'y')} = ~{self.pin(cell, 'a')};")

    def submodule(self, cell: Cell) -> None:
        conns = ", ".join(f".{pin}({net})" for pin, net in sorted(cell.pins.items()))
        self.body.append(f"  {cell.params['module']} {cell.name} ({conns});")


def _module_order(ir: NetlistIR) -> List[str]:
    order: List[str] = []
    seen: Set[str] = set()

    def visit(name: str) -> None:
        if name in seen:
            return
        seen.add(name)
        for cell in sorted(ir.modules[name].cells.values(), key=lambda cell: cell.name):
            if cell.kind == "submodule":
                visit(str(cell.params["module"]))
        order.append(name)

    visit(ir.top)
    return order


def format_hdl(ir: NetlistIR) -> str:
    lines = ["// smemsynth structural netlist, Verilog-2001", f"// top: {ir.top}"]
    for key, value in sorted(ir.attrs.items()):
        lines.append(f"// {key} = {value}")

    variants: Dict[str, Cell] = {}
    for _, cell in ir.walk():
        if cell.kind == "baplus_instance":
            variants.setdefault(str(cell.params["variant"]), cell)
    for variant in sorted(variants):
        cell = variants[variant]
        lines.append("")
        lines.extend(baplus_module(variant, cell.param("B"), cell.param("W")))

    for name in _module_order(ir):
        lines.append("")
        lines.extend(ModuleEmitter(ir.modules[name]).emit())
    return "\n".join(lines) + "\n"


def emit_hdl(ir: NetlistIR, path: Union[str, Path]) -> None:
    """
    Writes the netlist as fully elaborated Verilog-2001.

    BA+ instances become behavioral modules with the simulator's array
    semantics; every other cell becomes continuous assignments or a clocked
    register. Modules, nets and cells are emitted in sorted order.

    Args:
        ir (NetlistIR): A well-formed netlist.
        path (Union[str, Path]): Destination file.
    """
    Path(path).write_text(format_hdl(ir), encoding="utf-8")
    logger.info(f"HDL: Wrote {ir.top} to {path}")
