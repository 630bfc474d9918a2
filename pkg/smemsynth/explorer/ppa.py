from dataclasses import dataclass
from typing import Optional

from smemsynth.baplus import MacroLibrary, TechParams
from smemsynth.floorplan.estimate import estimate_dimensions
from smemsynth.utils import log2

from .spec import MemoryConfig


def gops_per_watt(e_op: float, p_leak: float, t_cycle: float) -> float:
    """Operations per second per watt at full utilization (fJ, nW, ps in)."""
    joules_per_op = e_op * 1e-15 + p_leak * 1e-9 * t_cycle * 1e-12
    return 1e-9 / joules_per_op


@dataclass(frozen=True)
class PPAEstimate:
    """
    Area (um^2), cycle time (ps), read energy per op (fJ), leakage (nW) and GOPS/W.

    ``e_write`` is the energy of a write access; it equals ``e_op`` when the
    model does not distinguish the two.
    """

    area: float
    t_cycle: float
    e_op: float
    p_leak: float
    gops_per_watt: float
    e_write: float

    @classmethod
    def from_metrics(
        cls, area: float, t_cycle: float, e_op: float, p_leak: float, e_write: Optional[float] = None
    ) -> "PPAEstimate":
        e_write = e_op if e_write is None else e_write
        return cls(area, t_cycle, e_op, p_leak, gops_per_watt(e_op, p_leak, t_cycle), e_write)

    @property
    def objectives(self):
        return (self.area, self.t_cycle, self.e_op)

    def e_mix(self, write_share: float) -> float:
        """Average dynamic energy per access when ``write_share`` of the accesses are writes."""
        return (1.0 - write_share) * self.e_op + write_share * self.e_write


def decoder_area(in_bits: int, tech: TechParams) -> float:
    return tech.a_dec_in * in_bits + tech.a_dec_line * (1 << in_bits)


def decode_energy(words: int, tech: TechParams) -> float:
    """Energy of one global address decode over ``words`` entries."""
    return tech.e_dec0 + tech.e_dec1 * log2(words)


def global_decoder_area(cfg: MemoryConfig, tech: TechParams) -> float:
    """Read and write decoders selecting one of the R*K macro rows, zero for a single row."""
    if cfg.R * cfg.K == 1:
        return 0.0
    return 2 * decoder_area(log2(cfg.R * cfg.K), tech)


def periphery_logic_area(cfg: MemoryConfig, lib: MacroLibrary, tech: Optional[TechParams] = None) -> float:
    """
    Area of the logic above the BA+ tiles: global decoders, tri-state bitline drivers, column mux.

    Args:
        cfg (MemoryConfig): The configuration.
        lib (MacroLibrary): Library holding the variant.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        float: Logic area in um^2, zero for a single-macro configuration.
    """
    tech = tech or lib.tech
    macro = lib.resolve(cfg.variant)
    area = global_decoder_area(cfg, tech)
    if cfg.K > 1:
        area += tech.a_tri_bit * cfg.C * macro.W * cfg.K
    if cfg.M > 1:
        # read mux plus write steering
        area += 2 * tech.a_mux_bit * cfg.C * macro.W
    return area


def evaluate_ppa(cfg: MemoryConfig, lib: MacroLibrary, tech: Optional[TechParams] = None) -> PPAEstimate:
    """
    Composes the PPA of a configuration from its BA+ model and the periphery it needs.

    Args:
        cfg (MemoryConfig): The configuration.
        lib (MacroLibrary): Library holding the variant.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        PPAEstimate: The estimate, with read energy as ``e_op`` and the write access in ``e_write``.

    Raises:
        UnknownVariantError: If the variant is not in the library.
        ConstraintError: If M does not divide C*W.
    """
    tech = tech or lib.tech
    macro = lib.get(cfg.variant)
    cfg.bits(macro.W)
    words = cfg.words(macro.B)

    t_cycle = tech.d0 + tech.d1 * log2(cfg.R * cfg.K) + macro.t_access
    if cfg.K > 1:
        t_cycle += tech.g0 + tech.g1 * cfg.K
    if cfg.M > 1:
        t_cycle += tech.m0 + tech.m1 * log2(cfg.M)

    w_nm, h_nm = estimate_dimensions(cfg, lib, tech)
    shared = decode_energy(words, tech) + tech.e_wire_per_um * (w_nm + h_nm) / 1000.0
    e_op = shared + cfg.C * macro.e_read
    e_write = shared + cfg.C * macro.e_write

    n_macros = cfg.R * cfg.C * cfg.K
    area = n_macros * macro.area_um2(tech) * (1 + tech.periph_fraction)
    area += periphery_logic_area(cfg, lib, tech)
    p_leak = n_macros * macro.p_leak + tech.p_leak_periph

    return PPAEstimate.from_metrics(area, t_cycle, e_op, p_leak, e_write)


def compiled_mux(words: int, bits: int) -> int:
    """Column mux of a near-square compiled array: the smallest power of two with bits*M >= words/M."""
    mux = 1
    while bits * mux < words // mux and words // mux > 1:
        mux <<= 1
    return mux


def traditional_baseline(cfg: MemoryConfig, lib: MacroLibrary, tech: Optional[TechParams] = None) -> PPAEstimate:
    """
    Models the same capacity built by a conventional SRAM compiler.

    The compiler places a single near-square bank of words/M rows by bits*M
    columns with one row decoder and a column mux. Its patterning-restricted
    leaf cells are denser than BA+ bitcells but slower and costlier per access
    (``trad_*`` factors), and a read activates the whole row.

    Args:
        cfg (MemoryConfig): The configuration whose capacity is matched.
        lib (MacroLibrary): Library holding the variant.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        PPAEstimate: The baseline estimate.
    """
    tech = tech or lib.tech
    macro = lib.get(cfg.variant)
    words, bits = cfg.words(macro.B), cfg.bits(macro.W)
    mux = compiled_mux(words, bits)
    rows, cols = words // mux, bits * mux

    cell_um2 = tech.pitches_nm(2) * tech.tracks_nm(1) / 1e6
    area = words * bits * cell_um2 * tech.trad_area_factor
    if rows > 1:
        area += 2 * decoder_area(log2(rows), tech)
    if mux > 1:
        area += 2 * tech.a_mux_bit * cols

    array_delay = tech.a0 + tech.a1 * rows + tech.a2 * cols
    t_cycle = tech.d0 + tech.d1 * log2(rows) + array_delay * tech.trad_delay_factor
    if mux > 1:
        t_cycle += tech.m0 + tech.m1 * log2(mux)

    wire_um = (tech.pitches_nm(2 * cols) + tech.tracks_nm(rows)) / 1000.0
    shared = decode_energy(words, tech) + tech.e_wire_per_um * wire_um
    e_read = tech.b0 + tech.b1 * cols + tech.b2 * rows * tech.leak_fraction
    e_write = tech.c0 + tech.c1 * cols + tech.c2 * rows * tech.leak_fraction
    p_leak = tech.leak_per_bit_nw * words * bits + tech.p_leak_periph

    return PPAEstimate.from_metrics(
        area,
        t_cycle,
        shared + e_read * tech.trad_energy_factor,
        p_leak,
        shared + e_write * tech.trad_energy_factor,
    )
