from dataclasses import dataclass
from typing import List, Optional, Tuple

from smemsynth.baplus import MacroLibrary, TechParams
from smemsynth.utils import logger, parallel_map

from .enumerate import enumerate_configs
from .pareto import pareto_front
from .ppa import PPAEstimate, evaluate_ppa
from .report import ReportRow
from .select import Selection, select_best
from .spec import MemoryConfig, UserSpec


@dataclass(frozen=True)
class Exploration:
    rows: Tuple[ReportRow, ...]
    front: Tuple[Tuple[MemoryConfig, PPAEstimate], ...]
    selection: Optional[Selection]


def explore(spec: UserSpec, lib: MacroLibrary, tech: Optional[TechParams] = None) -> Exploration:
    """
    Runs enumerate, evaluate, pareto and select for one spec.

    Args:
        spec (UserSpec): The request.
        lib (MacroLibrary): Candidate BA+ variants.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        Exploration: Every evaluated row, the front, and the selection (None if nothing fits).
    """
    tech = tech or lib.tech
    configs = enumerate_configs(spec, lib, tech)
    estimates = parallel_map(lambda cfg: evaluate_ppa(cfg, lib, tech), configs)
    points: List[Tuple[MemoryConfig, PPAEstimate]] = list(zip(configs, estimates))
    if not points:
        logger.warning(f"Explore: no configuration implements {spec.words}x{spec.bits}")
        return Exploration((), (), None)

    front = pareto_front(points)
    on_front = {cfg for cfg, _ in front}
    rows = tuple(ReportRow(cfg, estimate, cfg in on_front) for cfg, estimate in points)
    selection = select_best(front, spec)
    logger.info(
        f"Explore: {len(front)}/{len(points)} on front, selected {selection.config.label}"
    )
    return Exploration(rows, tuple(front), selection)
