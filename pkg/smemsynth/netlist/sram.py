from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

from smemsynth.baplus import BAPlusMacro, MacroLibrary, TechParams
from smemsynth.base import ConstraintError
from smemsynth.explorer.ppa import evaluate_ppa
from smemsynth.explorer.spec import MemoryConfig
from smemsynth.floorplan.estimate import estimate_dimensions
from smemsynth.utils import ba_instance_name, log2, logger, mask

from .ir import Module, NetlistIR


class AddressFields(NamedTuple):
    bank_row: int
    ba: int
    row: int
    mux: int


@dataclass(frozen=True)
class AddressLayout:
    """Bit widths of the address fields, MSB to LSB: bank_row | ba_in_bank | row_in_ba | mux_sel."""

    bank_bits: int
    ba_bits: int
    row_bits: int
    mux_bits: int

    @classmethod
    def of(cls, cfg: MemoryConfig, B: int) -> "AddressLayout":
        return cls(log2(cfg.R), log2(cfg.K), log2(B), log2(cfg.M))

    @property
    def width(self) -> int:
        return self.bank_bits + self.ba_bits + self.row_bits + self.mux_bits

    @property
    def row_lsb(self) -> int:
        return self.mux_bits

    @property
    def ba_lsb(self) -> int:
        return self.mux_bits + self.row_bits

    @property
    def bank_lsb(self) -> int:
        return self.mux_bits + self.row_bits + self.ba_bits


def split_address(cfg: MemoryConfig, lib: MacroLibrary, addr: int) -> AddressFields:
    """
    Partitions a word address into (bank_row, ba_in_bank, row_in_ba, mux_sel).

    Raises:
        ConstraintError: If the address is outside [0, words).
    """
    macro = lib.resolve(cfg.variant)
    layout = AddressLayout.of(cfg, macro.B)
    if not 0 <= addr < cfg.words(macro.B):
        raise ConstraintError(f"{cfg.label}: address {addr} out of range")
    return AddressFields(
        (addr >> layout.bank_lsb) & mask(layout.bank_bits),
        (addr >> layout.ba_lsb) & mask(layout.ba_bits),
        (addr >> layout.row_lsb) & mask(layout.row_bits),
        addr & mask(layout.mux_bits),
    )


def join_address(cfg: MemoryConfig, lib: MacroLibrary, fields: AddressFields) -> int:
    macro = lib.resolve(cfg.variant)
    layout = AddressLayout.of(cfg, macro.B)
    limits = (cfg.R, cfg.K, macro.B, cfg.M)
    for label, value, limit in zip(AddressFields._fields, fields, limits):
        if not 0 <= value < limit:
            raise ConstraintError(f"{cfg.label}: {label}={value} out of range")
    return (
        (fields.bank_row << layout.bank_lsb)
        | (fields.ba << layout.ba_lsb)
        | (fields.row << layout.row_lsb)
        | fields.mux
    )


def build_sram_module(name: str, cfg: MemoryConfig, macro: BAPlusMacro, data_bits: Optional[int] = None) -> Module:
    """
    Builds the structural module of a 1R-1W SRAM.

    One read and one write decoder tree produce R*K*B one-hot wordlines; per-BA+
    clock-gated wordline buffers slice them without further decoding. The K BA+
    outputs of each bank drive one tri-state global bitline, R bank rows merge
    through a second tri-state stage, and a column mux reduces C*W bits to the word.

    ``data_bits`` narrows the word of a mux-free configuration below W; the
    upper macro columns are then written as zero and never read.

    Raises:
        ConstraintError: If ``data_bits`` exceeds the word or is combined with a column mux.
    """
    W, B = macro.W, macro.B
    bits = cfg.bits(W)
    layout = AddressLayout.of(cfg, B)
    addr_width = max(1, layout.width)
    has_mux = cfg.C > 1 or cfg.M > 1
    if data_bits is not None and data_bits != bits:
        if has_mux or not 1 <= data_bits < bits:
            raise ConstraintError(f"{cfg.label}: cannot narrow a {bits}-bit word to {data_bits} bits")
        bits = data_bits
    lane = W if has_mux else bits

    module = Module(name)
    for port, direction, width in (
        ("clk", "in", 1),
        ("ren", "in", 1),
        ("raddr", "in", addr_width),
        ("wen", "in", 1),
        ("waddr", "in", addr_width),
        ("wdata", "in", bits),
        ("rdata", "out", bits),
    ):
        module.add_port(port, direction, width)

    decode_width = layout.bank_bits + layout.ba_bits + layout.row_bits
    for side in ("r", "w"):
        dec = f"{side}dec"
        module.add_cell(dec, "decoder", style="field", lsb=layout.row_lsb, width=decode_width)
        module.sink(dec, "a", f"{side}addr")
        module.sink(dec, "en", f"{side}en")
        module.add_net(f"{dec}_y", 1 << decode_width)
        module.drive(dec, "y", f"{dec}_y")

        for r in range(cfg.R):
            for k in range(cfg.K):
                gate = f"{side}wlg_r{r}_k{k}"
                module.add_cell(gate, "wordline_gate", lsb=(r * cfg.K + k) * B, width=B)
                module.sink(gate, "wl", f"{dec}_y")
                module.sink(gate, "clk", "clk")
                module.add_net(f"{side}wl_r{r}_k{k}", B)
                module.drive(gate, "y", f"{side}wl_r{r}_k{k}")

    if has_mux:
        module.add_cell("wmux", "column_mux", dir="write", C=cfg.C, W=W, M=cfg.M, bits=bits, width=layout.mux_bits)
        module.sink("wmux", "d", "wdata")
        if cfg.M > 1:
            module.sink("wmux", "sel", "waddr")
        for c in range(cfg.C):
            module.add_net(f"din_c{c}", W)
            module.drive("wmux", f"y{c}", f"din_c{c}")
            if cfg.M > 1:
                module.add_net(f"dmask_c{c}", W)
                module.drive("wmux", f"m{c}", f"dmask_c{c}")

    def column_net(c: int) -> str:
        return f"col_c{c}" if has_mux else "rdata"

    for c in range(cfg.C):
        if has_mux:
            module.add_net(column_net(c), W)
        for r in range(cfg.R):
            gbl = f"gbl_r{r}_c{c}" if cfg.R > 1 else column_net(c)
            if cfg.R > 1:
                module.add_net(gbl, lane)
            for k in range(cfg.K):
                inst = ba_instance_name(r, c, k)
                module.add_cell(inst, "baplus_instance", variant=macro.name, B=B, W=W, bank=f"r{r}_c{c}")
                module.sink(inst, "clk", "clk")
                module.sink(inst, "rwl", f"rwl_r{r}_k{k}")
                module.sink(inst, "wwl", f"wwl_r{r}_k{k}")
                module.sink(inst, "din", f"din_c{c}" if has_mux else "wdata")
                if cfg.M > 1:
                    module.sink(inst, "dmask", f"dmask_c{c}")
                module.add_net(f"dout_r{r}_c{c}_k{k}", lane)
                module.add_net(f"rv_r{r}_c{c}_k{k}", 1)
                module.drive(inst, "dout", f"dout_r{r}_c{c}_k{k}")
                module.drive(inst, "rv", f"rv_r{r}_c{c}_k{k}")

                tri = f"tri_r{r}_c{c}_k{k}"
                module.add_cell(tri, "tristate_driver", bit=0)
                module.sink(tri, "d", f"dout_r{r}_c{c}_k{k}")
                module.sink(tri, "en", f"rv_r{r}_c{c}_k{k}")
                module.drive(tri, "q", gbl)

    if cfg.R > 1:
        for r in range(cfg.R):
            # bank row valid: any of its BA+ was read, column 0 is representative
            if cfg.K > 1:
                module.add_cell(f"brv_r{r}", "or", n=cfg.K)
                for k in range(cfg.K):
                    module.sink(f"brv_r{r}", f"i{k}", f"rv_r{r}_c0_k{k}")
                module.add_net(f"brv_r{r}", 1)
                module.drive(f"brv_r{r}", "y", f"brv_r{r}")
                valid = f"brv_r{r}"
            else:
                valid = f"rv_r{r}_c0_k0"
            for c in range(cfg.C):
                btri = f"btri_r{r}_c{c}"
                module.add_cell(btri, "tristate_driver", bit=0)
                module.sink(btri, "d", f"gbl_r{r}_c{c}")
                module.sink(btri, "en", valid)
                module.drive(btri, "q", column_net(c))

    if has_mux:
        module.add_cell("rmux", "column_mux", dir="read", C=cfg.C, W=W, M=cfg.M, bits=bits, width=layout.mux_bits)
        for c in range(cfg.C):
            module.sink("rmux", f"d{c}", column_net(c))
        if cfg.M > 1:
            module.add_cell("rq_sel", "output_reg", width=addr_width)
            module.sink("rq_sel", "d", "raddr")
            module.sink("rq_sel", "clk", "clk")
            module.add_net("raddr_q", addr_width)
            module.drive("rq_sel", "q", "raddr_q")
            module.sink("rmux", "sel", "raddr_q")
        module.drive("rmux", "y", "rdata")

    return module


def sram_attrs(cfg: MemoryConfig, lib: MacroLibrary, tech: TechParams) -> List[Tuple[str, object]]:
    macro = lib.get(cfg.variant)
    estimate = evaluate_ppa(cfg, lib, tech)
    w_nm, h_nm = estimate_dimensions(cfg, lib, tech)
    return [
        ("design", "sram"),
        ("variant", cfg.variant),
        ("R", cfg.R),
        ("C", cfg.C),
        ("K", cfg.K),
        ("M", cfg.M),
        ("words", cfg.words(macro.B)),
        ("bits", cfg.bits(macro.W)),
        ("addr_width", AddressLayout.of(cfg, macro.B).width),
        ("area_um2", f"{estimate.area:.6f}"),
        ("t_cycle_ps", f"{estimate.t_cycle:.6f}"),
        ("e_op_fj", f"{estimate.e_op:.6f}"),
        ("p_leak_nw", f"{estimate.p_leak:.6f}"),
        ("wire_um", f"{(w_nm + h_nm) / 1000.0:.6f}"),
    ]


def generate_sram(
    cfg: MemoryConfig,
    lib: MacroLibrary,
    tech: Optional[TechParams] = None,
    name: str = "sram",
) -> NetlistIR:
    """
    Generates the netlist of a 1R-1W SRAM configuration.

    Args:
        cfg (MemoryConfig): The configuration.
        lib (MacroLibrary): Library holding the variant.
        tech (Optional[TechParams]): Defaults to the library's tech.
        name (str): Top module name.

    Returns:
        NetlistIR: A single-module netlist with R*C*K BA+ instances.

    Raises:
        ConstraintError: If M does not divide C*W.
        UnknownVariantError: If the variant is not in the library.
    """
    tech = tech or lib.tech
    macro = lib.get(cfg.variant)
    ir = NetlistIR(top=name)
    ir.add_module(build_sram_module(name, cfg, macro))
    ir.attrs.update((key, str(value)) for key, value in sram_attrs(cfg, lib, tech))
    logger.debug(f"Netlist: {cfg.label} with {len(ir.top_module.cells)} cells")
    return ir


def sram_config(ir: NetlistIR) -> MemoryConfig:
    """Recovers the configuration recorded in a 1R-1W netlist's attributes."""
    if ir.attrs.get("design") != "sram":
        raise ConstraintError(f"{ir.top}: not a 1R-1W SRAM netlist")
    return MemoryConfig(
        variant=ir.attrs["variant"],
        R=ir.attr_int("R"),
        C=ir.attr_int("C"),
        K=ir.attr_int("K"),
        M=ir.attr_int("M"),
    )
