from collections import Counter
from typing import Dict, Optional

from smemsynth.baplus import DEFAULT_TECH, MacroLibrary, TechParams
from smemsynth.utils import logger

from .engine import SimResult


def _cell_energy(kind: str, params: Dict, events: Dict[str, int], lib: MacroLibrary, tech: TechParams) -> float:
    count = sum(events.values())
    if kind == "baplus_instance":
        macro = lib.resolve(str(params["variant"]))
        return events.get("read", 0) * macro.e_read + events.get("write", 0) * macro.e_write
    if kind == "decoder":
        return count * (tech.e_dec0 + tech.e_dec1 * int(params["width"]))
    if kind == "pa_increment":
        return count * tech.e_inc
    if kind == "addr_translate":
        bits = (int(params["m"]) - int(params["a"])) + (int(params["n"]) - int(params["b"]))
        return count * tech.e_xlat_bit * bits
    if kind == "pa_align":
        stages = int(params["a"]) + int(params["b"])
        return count * tech.e_align_bit * int(params["P"]) * (1 << stages) * stages
    return 0.0


def energy_breakdown(
    result: SimResult,
    lib: Optional[MacroLibrary] = None,
    tech: Optional[TechParams] = None,
) -> Dict[str, float]:
    """
    Splits the energy of a simulation by cell kind, plus ``wire`` and ``leakage``.

    Args:
        result (SimResult): A finished simulation.
        lib (Optional[MacroLibrary]): Source of BA+ energies.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        Dict[str, float]: fJ per category.
    """
    lib = lib or MacroLibrary((), tech or DEFAULT_TECH)
    tech = tech or lib.tech
    totals: Counter = Counter()
    for name, events in result.activity.items():
        kind, params = result.cells[name]
        totals[kind] += _cell_energy(kind, params, events, lib, tech)

    attrs = result.attrs
    wire_um = float(attrs.get("wire_um", 0.0))
    totals["wire"] += tech.e_wire_per_um * wire_um * (result.reads + result.writes)
    leak_nw, t_cycle = float(attrs.get("p_leak_nw", 0.0)), float(attrs.get("t_cycle_ps", 0.0))
    # nW * ps = 1e-21 J = 1e-6 fJ
    totals["leakage"] += leak_nw * t_cycle * result.cycles * 1e-6
    return dict(totals)


def energy_report(
    result: SimResult,
    lib: Optional[MacroLibrary] = None,
    tech: Optional[TechParams] = None,
) -> float:
    """Total energy of a simulation in fJ from its per-cell activity."""
    breakdown = energy_breakdown(result, lib, tech)
    total = sum(breakdown.values())
    logger.debug(f"Energy: {total:.3f} fJ over {result.cycles} cycles")
    return total
