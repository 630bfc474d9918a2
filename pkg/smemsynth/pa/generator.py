from typing import Optional

from smemsynth.baplus import MacroLibrary, TechParams
from smemsynth.base import ConstraintError
from smemsynth.netlist import Module, NetlistIR, build_sram_module
from smemsynth.utils import logger, mask

from .compare import bank_config, pa_attrs
from .window import BOUNDARIES, Boundary, PAWindowSpec


def _add_pa_ports(module: Module, spec: PAWindowSpec) -> None:
    for port, direction, width in (
        ("clk", "in", 1),
        ("ren", "in", 1),
        ("x", "in", spec.m),
        ("y", "in", spec.n),
        ("wen", "in", 1),
        ("wx", "in", spec.m),
        ("wy", "in", spec.n),
        ("wdata", "in", spec.pixel_bits),
        ("win", "out", spec.bank_count * spec.pixel_bits),
    ):
        module.add_port(port, direction, width)


def _add_alignment(module: Module, spec: PAWindowSpec, boundary: Boundary) -> None:
    for axis in ("x", "y"):
        reg = f"rq_{axis}"
        width = spec.m if axis == "x" else spec.n
        module.add_cell(reg, "output_reg", width=width)
        module.sink(reg, "d", axis)
        module.sink(reg, "clk", "clk")
        module.add_net(f"{axis}_q", width)
        module.drive(reg, "q", f"{axis}_q")

    module.add_cell(
        "align", "pa_align", a=spec.a, b=spec.b, m=spec.m, n=spec.n, P=spec.pixel_bits, boundary=boundary
    )
    for p in range(spec.banks_x):
        for q in range(spec.banks_y):
            module.sink("align", f"d{p}_{q}", f"bank_p{p}_q{q}")
    module.sink("align", "x", "x_q")
    module.sink("align", "y", "y_q")
    module.drive("align", "w", "win")


def _check_boundary(boundary: str) -> None:
    if boundary not in BOUNDARIES:
        raise ConstraintError(f"unknown boundary mode '{boundary}'")


def generate_pa_sm(
    spec: PAWindowSpec,
    lib: MacroLibrary,
    tech: Optional[TechParams] = None,
    boundary: Boundary = "wrap",
) -> NetlistIR:
    """
    Generates the smart parallel-access memory.

    One dual-port X decoder and one dual-port Y decoder are shared by all
    2^(a+b) banks; per-bank increment cells advance the shared one-hot row and
    column by one where the window wraps past the bank, and the alignment
    network rotates the bank outputs into window order.

    Args:
        spec (PAWindowSpec): The geometry.
        lib (MacroLibrary): BA+ library, bank variants are generated on demand.
        tech (Optional[TechParams]): Defaults to the library's tech.
        boundary (Boundary): Window behavior at the image edge.

    Returns:
        NetlistIR: The flat SM netlist.
    """
    _check_boundary(boundary)
    tech = tech or lib.tech
    bank = bank_config(spec, lib)
    macro = lib.resolve(bank.variant)
    rows, cols = spec.rows, spec.cols

    module = Module("pa_sm")
    _add_pa_ports(module, spec)

    for axis, lsb, width, size in (("x", spec.a, spec.m - spec.a, rows), ("y", spec.b, spec.n - spec.b, cols)):
        dec = f"{axis}dec"
        module.add_cell(dec, "decoder", style="dual", lsb=lsb, width=width)
        module.sink(dec, "a", axis)
        module.sink(dec, "en", "ren")
        module.sink(dec, "a2", f"w{axis}")
        module.sink(dec, "en2", "wen")
        module.add_net(f"{dec}_r", size)
        module.add_net(f"{dec}_w", size)
        module.drive(dec, "y", f"{dec}_r")
        module.drive(dec, "y2", f"{dec}_w")

    for p in range(spec.banks_x):
        for q in range(spec.banks_y):
            tag = f"p{p}_q{q}"
            inc = f"inc_{tag}"
            module.add_cell(inc, "pa_increment", p=p, q=q, a=spec.a, b=spec.b, rows=rows, cols=cols)
            module.sink(inc, "ox", "xdec_r")
            module.sink(inc, "oy", "ydec_r")
            module.sink(inc, "x", "x")
            module.sink(inc, "y", "y")
            module.add_net(f"rx_{tag}", rows)
            module.add_net(f"ry_{tag}", cols)
            module.drive(inc, "rx", f"rx_{tag}")
            module.drive(inc, "ry", f"ry_{tag}")
            module.add_net(f"bank_{tag}", spec.pixel_bits)

            for k in range(cols):
                select = {"s0_mask": 1 << k, "s0_eq": 1 << k}
                rgate = f"rwlg_{tag}_k{k}"
                module.add_cell(rgate, "wordline_gate", lsb=0, width=rows, **select)
                module.sink(rgate, "wl", f"rx_{tag}")
                module.sink(rgate, "s0", f"ry_{tag}")
                module.sink(rgate, "clk", "clk")
                module.add_net(f"rwl_{tag}_k{k}", rows)
                module.drive(rgate, "y", f"rwl_{tag}_k{k}")

                # write lands in the bank matching the low coordinate bits
                wgate = f"wwlg_{tag}_k{k}"
                module.add_cell(
                    wgate,
                    "wordline_gate",
                    lsb=0,
                    width=rows,
                    s1_mask=mask(spec.a),
                    s1_eq=p,
                    s2_mask=mask(spec.b),
                    s2_eq=q,
                    **select,
                )
                module.sink(wgate, "wl", "xdec_w")
                module.sink(wgate, "s0", "ydec_w")
                module.sink(wgate, "s1", "wx")
                module.sink(wgate, "s2", "wy")
                module.sink(wgate, "clk", "clk")
                module.add_net(f"wwl_{tag}_k{k}", rows)
                module.drive(wgate, "y", f"wwl_{tag}_k{k}")

                inst = f"ba_{tag}_k{k}"
                module.add_cell(inst, "baplus_instance", variant=macro.name, B=rows, W=macro.W, bank=tag)
                module.sink(inst, "clk", "clk")
                module.sink(inst, "rwl", f"rwl_{tag}_k{k}")
                module.sink(inst, "wwl", f"wwl_{tag}_k{k}")
                module.sink(inst, "din", "wdata")
                module.add_net(f"dout_{tag}_k{k}", spec.pixel_bits)
                module.add_net(f"rv_{tag}_k{k}", 1)
                module.drive(inst, "dout", f"dout_{tag}_k{k}")
                module.drive(inst, "rv", f"rv_{tag}_k{k}")

                tri = f"tri_{tag}_k{k}"
                module.add_cell(tri, "tristate_driver", bit=0)
                module.sink(tri, "d", f"dout_{tag}_k{k}")
                module.sink(tri, "en", f"rv_{tag}_k{k}")
                module.drive(tri, "q", f"bank_{tag}")

    _add_alignment(module, spec, boundary)

    ir = NetlistIR(top="pa_sm")
    ir.add_module(module)
    ir.attrs.update(pa_attrs(spec, lib, tech, "sm", boundary))
    logger.debug(f"PA: SM {spec.label} with {len(module.cells)} cells")
    return ir


def generate_pa_tm(
    spec: PAWindowSpec,
    lib: MacroLibrary,
    tech: Optional[TechParams] = None,
    boundary: Boundary = "wrap",
) -> NetlistIR:
    """
    Generates the traditional parallel-access memory.

    Each of the 2^(a+b) banks is an independent 1R-1W SRAM with its own read
    and write decoder trees, fed by a per-bank address translator; the
    alignment network matches the SM design.

    Args:
        spec (PAWindowSpec): The geometry.
        lib (MacroLibrary): BA+ library, bank variants are generated on demand.
        tech (Optional[TechParams]): Defaults to the library's tech.
        boundary (Boundary): Window behavior at the image edge.

    Returns:
        NetlistIR: Top module ``pa_tm`` instantiating module ``tm_bank`` per bank.
    """
    _check_boundary(boundary)
    tech = tech or lib.tech
    bank = bank_config(spec, lib)
    child = build_sram_module("tm_bank", bank, lib.resolve(bank.variant), data_bits=spec.pixel_bits)
    addr_width = child.ports["raddr"].width

    module = Module("pa_tm")
    _add_pa_ports(module, spec)
    for p in range(spec.banks_x):
        for q in range(spec.banks_y):
            tag = f"p{p}_q{q}"
            xlat = f"xlat_{tag}"
            module.add_cell(xlat, "addr_translate", p=p, q=q, a=spec.a, b=spec.b, m=spec.m, n=spec.n)
            for pin in ("x", "y", "wx", "wy", "wen"):
                module.sink(xlat, pin, pin)
            for pin, width in (("raddr", addr_width), ("waddr", addr_width), ("wen_o", 1)):
                module.add_net(f"{pin}_{tag}", width)
                module.drive(xlat, pin, f"{pin}_{tag}")

            inst = f"bank_{tag}"
            module.add_net(inst, spec.pixel_bits)
            module.add_cell(inst, "submodule", module="tm_bank")
            module.sink(inst, "clk", "clk")
            module.sink(inst, "ren", "ren")
            module.sink(inst, "raddr", f"raddr_{tag}")
            module.sink(inst, "wen", f"wen_o_{tag}")
            module.sink(inst, "waddr", f"waddr_{tag}")
            module.sink(inst, "wdata", "wdata")
            module.drive(inst, "rdata", inst)

    _add_alignment(module, spec, boundary)

    ir = NetlistIR(top="pa_tm")
    ir.add_module(module)
    ir.add_module(child)
    ir.attrs.update(pa_attrs(spec, lib, tech, "tm", boundary))
    logger.debug(f"PA: TM {spec.label} with {spec.bank_count} sub-SRAMs")
    return ir
