from typing import TYPE_CHECKING, Optional, Tuple

from smemsynth.baplus import MacroLibrary, TechParams

if TYPE_CHECKING:
    from smemsynth.explorer.spec import MemoryConfig


class GridGeometry:
    """Integer-nm dimensions of every floorplan region for one configuration."""

    def __init__(
        self,
        cfg: "MemoryConfig",
        lib: MacroLibrary,
        tech: Optional[TechParams] = None,
        logic_area: float = 0.0,
    ) -> None:
        tech = tech or lib.tech
        macro = lib.resolve(cfg.variant)
        self.cfg = cfg
        self.macro_w: int = macro.width_nm(tech)
        self.macro_h: int = macro.height_nm(tech)
        self.gutter: int = tech.pitches_nm(tech.gutter_pitches)
        self.bank_periph_h: int = tech.tracks_nm(tech.bank_periph_tracks)
        self.global_periph_h: int = tech.tracks_nm(tech.global_periph_tracks)
        self.bank_w: int = self.macro_w + self.gutter
        self.bank_h: int = cfg.K * self.macro_h + self.bank_periph_h
        self.die_h: int = cfg.R * self.bank_h + self.global_periph_h

        strip_w = tech.pitches_nm(tech.decoder_strip_pitches)
        if logic_area > 0:
            # the left strip absorbs the synthesized periphery at the target density
            needed_nm2 = logic_area * 1e6 / tech.utilization
            strip_w = max(strip_w, -(-int(round(needed_nm2)) // self.die_h))
        self.periph_w: int = strip_w
        self.die_w: int = cfg.C * self.bank_w + self.periph_w


def estimate_dimensions(
    cfg: "MemoryConfig",
    lib: MacroLibrary,
    tech: Optional[TechParams] = None,
    logic_area: float = 0.0,
) -> Tuple[int, int]:
    """
    Estimates the die size of a configuration.

    w = C*(macro_w + gutter) + periph_w, h = R*(K*macro_h + bank_periph_h) + global_periph_h.

    Args:
        cfg (MemoryConfig): The configuration.
        lib (MacroLibrary): Library holding the variant.
        tech (Optional[TechParams]): Defaults to the library's tech.
        logic_area (float): Synthesized periphery area in um^2.

    Returns:
        Tuple[int, int]: Die width and height in nm.
    """
    geometry = GridGeometry(cfg, lib, tech, logic_area)
    return geometry.die_w, geometry.die_h
