import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

from smemsynth.baplus import MacroLibrary, TechParams
from smemsynth.explorer.ppa import PPAEstimate, decode_energy, decoder_area, evaluate_ppa, global_decoder_area
from smemsynth.explorer.spec import MemoryConfig
from smemsynth.floorplan.estimate import estimate_dimensions
from smemsynth.utils import logger

from .window import PAWindowSpec

Design = Literal["sm", "tm"]

# 2x2, 4x2, 2x4 and 4x4 windows as (a, b)
DEFAULT_WINDOWS: Tuple[Tuple[int, int], ...] = ((1, 1), (2, 1), (1, 2), (2, 2))


@dataclass(frozen=True)
class PAModel:
    """
    Analytic area, cycle time, window energy and leakage of one parallel-access design.

    ``bank`` is the 1R-1W estimate of a single bank, ``wire_um`` the global
    wire switched by one access across all banks.
    """

    area: float
    t_cycle: float
    e_window: float
    p_leak: float
    bank: PPAEstimate
    wire_um: float

    def estimate(self, spec: PAWindowSpec) -> PPAEstimate:
        # energy is reported per delivered pixel
        return PPAEstimate.from_metrics(self.area, self.t_cycle, self.e_window / spec.bank_count, self.p_leak)


def bank_config(spec: PAWindowSpec, lib: MacroLibrary) -> MemoryConfig:
    """
    The 1R-1W configuration of one bank: a 2^(m-a) x bank_width BA+ variant, stacked 2^(n-b) deep.

    A window spanning the whole image along an axis leaves one row (or column)
    per bank. Columns above pixel_bits are never read.
    """
    macro = lib.variant_for(spec.rows, spec.bank_width)
    return MemoryConfig(variant=macro.name, R=1, C=1, K=spec.cols, M=1)


def bank_estimate(
    spec: PAWindowSpec, lib: MacroLibrary, tech: Optional[TechParams] = None
) -> Tuple[MemoryConfig, PPAEstimate, float]:
    """
    Evaluates one bank as a stand-alone 1R-1W SRAM.

    Returns:
        Tuple[MemoryConfig, PPAEstimate, float]: The bank configuration, its
        estimate and its die semi-perimeter in um.
    """
    tech = tech or lib.tech
    cfg = bank_config(spec, lib)
    bank_lib = lib if cfg.variant in lib else MacroLibrary([lib.resolve(cfg.variant)], tech)
    w_nm, h_nm = estimate_dimensions(cfg, bank_lib, tech)
    return cfg, evaluate_ppa(cfg, bank_lib, tech), (w_nm + h_nm) / 1000.0


def pa_model(spec: PAWindowSpec, lib: MacroLibrary, tech: Optional[TechParams], design: Design) -> PAModel:
    """
    Applies the 1R-1W model to a parallel-access design with decoder sharing.

    Both designs start from 2^(a+b) copies of the bank estimate plus the
    alignment network. TM keeps every bank whole and adds a control block and
    an address translator per bank. SM strips the per-bank global decoders,
    their decode energy and periphery leakage, and pays instead for one shared
    dual-port X and Y decoder, one control block and per-bank increment logic.

    Args:
        spec (PAWindowSpec): The geometry.
        lib (MacroLibrary): BA+ library, bank variants are generated on demand.
        tech (Optional[TechParams]): Defaults to the library's tech.
        design (Design): ``sm`` or ``tm``.

    Returns:
        PAModel: The model figures.
    """
    tech = tech or lib.tech
    cfg, bank, wire_um = bank_estimate(spec, lib, tech)
    banks, P = spec.bank_count, spec.pixel_bits
    x_bits, y_bits = spec.m - spec.a, spec.n - spec.b
    stages = spec.a + spec.b

    align_area = tech.a_mux_bit * P * banks * stages
    align_delay = tech.m0 + tech.m1 * stages if banks > 1 else 0.0
    align_energy = tech.e_align_bit * P * banks * stages

    if design == "tm":
        xlat_bits = x_bits + y_bits
        area = banks * (bank.area + tech.a_ctrl + tech.a_xlat_bit * xlat_bits)
        t_cycle = bank.t_cycle + tech.t_xlat_bit * xlat_bits
        e_window = banks * (bank.e_op + tech.e_xlat_bit * xlat_bits)
        p_leak = banks * bank.p_leak
    else:
        area = banks * (bank.area - global_decoder_area(cfg, tech)) + tech.a_ctrl
        area += 2 * (decoder_area(x_bits, tech) + decoder_area(y_bits, tech))
        area += banks * tech.a_inc_line * (spec.rows + spec.cols)
        t_cycle = bank.t_cycle + tech.t_inc
        e_window = banks * (bank.e_op - decode_energy(spec.words_per_bank, tech) + tech.e_inc)
        e_window += 2 * tech.e_dec0 + tech.e_dec1 * (x_bits + y_bits)
        p_leak = banks * (bank.p_leak - tech.p_leak_periph) + tech.p_leak_periph

    return PAModel(
        area + align_area,
        t_cycle + align_delay,
        e_window + align_energy,
        p_leak,
        bank,
        banks * wire_um,
    )


def pa_attrs(
    spec: PAWindowSpec, lib: MacroLibrary, tech: Optional[TechParams], design: Design, boundary: str
) -> Dict[str, str]:
    model = pa_model(spec, lib, tech, design)
    estimate = model.estimate(spec)
    return {
        "design": f"pa_{design}",
        "m": str(spec.m),
        "n": str(spec.n),
        "a": str(spec.a),
        "b": str(spec.b),
        "pixel_bits": str(spec.pixel_bits),
        "boundary": boundary,
        "area_um2": f"{model.area:.6f}",
        "t_cycle_ps": f"{model.t_cycle:.6f}",
        "e_op_fj": f"{estimate.e_op:.6f}",
        "p_leak_nw": f"{model.p_leak:.6f}",
        "wire_um": f"{model.wire_um:.6f}",
    }


@dataclass(frozen=True)
class PAComparison:
    spec: PAWindowSpec
    sm: PPAEstimate
    tm: PPAEstimate

    @property
    def area_ratio(self) -> float:
        return self.sm.area / self.tm.area

    @property
    def rows(self) -> List[Tuple[str, PPAEstimate]]:
        return [("SM", self.sm), ("TM", self.tm)]


def compare_pa_ppa(spec: PAWindowSpec, lib: MacroLibrary, tech: Optional[TechParams] = None) -> PAComparison:
    """
    Evaluates SM and TM for one geometry.

    Args:
        spec (PAWindowSpec): The geometry.
        lib (MacroLibrary): BA+ library.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        PAComparison: Both estimates, energy per delivered pixel.
    """
    sm = pa_model(spec, lib, tech, "sm").estimate(spec)
    tm = pa_model(spec, lib, tech, "tm").estimate(spec)
    logger.info(f"PA: {spec.label} area SM/TM {sm.area / tm.area:.3f}")
    return PAComparison(spec, sm, tm)


def write_comparison(comparison: PAComparison, path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["design", "area_um2", "t_cycle_ps", "e_op_fj", "gops_per_watt"])
        for design, estimate in comparison.rows:
            writer.writerow(
                [
                    design,
                    f"{estimate.area:.6f}",
                    f"{estimate.t_cycle:.6f}",
                    f"{estimate.e_op:.6f}",
                    f"{estimate.gops_per_watt:.6f}",
                ]
            )


@dataclass(frozen=True)
class WindowPoint:
    """One window size of a sweep, absolute and normalized to the first point."""

    spec: PAWindowSpec
    comparison: PAComparison
    area_norm: float
    e_op_norm: float
    gops_norm: float

    @property
    def window(self) -> str:
        return f"{self.spec.banks_x}x{self.spec.banks_y}"


def sweep_windows(
    m: int,
    n: int,
    lib: MacroLibrary,
    tech: Optional[TechParams] = None,
    windows: Sequence[Tuple[int, int]] = DEFAULT_WINDOWS,
    pixel_bits: int = 8,
) -> List[WindowPoint]:
    """
    Compares window sizes at a fixed 2^m x 2^n image.

    Args:
        m (int): Image log-width.
        n (int): Image log-height.
        lib (MacroLibrary): BA+ library.
        tech (Optional[TechParams]): Defaults to the library's tech.
        windows (Sequence[Tuple[int, int]]): (a, b) pairs, the first one is the reference.
        pixel_bits (int): Bits per pixel.

    Returns:
        List[WindowPoint]: SM figures normalized to the first window.
    """
    comparisons = [
        compare_pa_ppa(PAWindowSpec(m=m, n=n, a=a, b=b, pixel_bits=pixel_bits), lib, tech)
        for a, b in windows
    ]
    base = comparisons[0].sm
    return [
        WindowPoint(
            item.spec,
            item,
            item.sm.area / base.area,
            item.sm.e_op / base.e_op,
            item.sm.gops_per_watt / base.gops_per_watt,
        )
        for item in comparisons
    ]


def write_sweep(points: Sequence[WindowPoint], path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["window", "area_um2", "e_op_fj", "gops_per_watt", "area_norm", "e_op_norm", "gops_norm"])
        for point in points:
            sm = point.comparison.sm
            writer.writerow(
                [
                    point.window,
                    f"{sm.area:.6f}",
                    f"{sm.e_op:.6f}",
                    f"{sm.gops_per_watt:.6f}",
                    f"{point.area_norm:.6f}",
                    f"{point.e_op_norm:.6f}",
                    f"{point.gops_norm:.6f}",
                ]
            )
