from dataclasses import dataclass
from typing import List, Sequence, Tuple

from smemsynth.utils import logger

from .ppa import PPAEstimate
from .spec import MemoryConfig, UserSpec


@dataclass(frozen=True)
class Selection:
    """
    The chosen design point.

    Attributes:
        config (MemoryConfig): The configuration.
        estimate (PPAEstimate): Its PPA.
        feasible (bool): False when no point met t_max/e_max and this is the least-violating one.
        violation (float): max over given constraints of value/limit - 1, 0 when unconstrained.
    """

    config: MemoryConfig
    estimate: PPAEstimate
    feasible: bool
    violation: float


def constraint_violation(estimate: PPAEstimate, spec: UserSpec) -> float:
    ratios: List[float] = []
    if spec.t_max is not None:
        ratios.append(estimate.t_cycle / spec.t_max - 1)
    if spec.e_max is not None:
        ratios.append(estimate.e_op / spec.e_max - 1)
    return max(ratios) if ratios else 0.0


def select_best(front: Sequence[Tuple[MemoryConfig, PPAEstimate]], spec: UserSpec) -> Selection:
    """
    Picks the minimum-area point meeting the timing and energy limits.

    Ties go to the smaller t_cycle, then the lexicographic config. Without a feasible
    point, the least-violating point is returned and flagged.

    Args:
        front (Sequence[Tuple[MemoryConfig, PPAEstimate]]): Nonempty candidate list.
        spec (UserSpec): Supplies t_max and e_max.

    Returns:
        Selection: The chosen point.
    """
    if not front:
        raise ValueError("select_best needs at least one point")

    scored = [(constraint_violation(estimate, spec), cfg, estimate) for cfg, estimate in front]
    feasible = [
        item
        for item in scored
        if (spec.t_max is None or item[2].t_cycle <= spec.t_max)
        and (spec.e_max is None or item[2].e_op <= spec.e_max)
    ]

    if feasible:
        violation, cfg, estimate = min(
            feasible, key=lambda item: (item[2].area, item[2].t_cycle, item[1].key)
        )
        return Selection(cfg, estimate, True, violation)

    violation, cfg, estimate = min(
        scored, key=lambda item: (item[0], item[2].area, item[2].t_cycle, item[1].key)
    )
    logger.warning(f"Select: no feasible point, least violating {cfg.label} ({violation:+.3f})")
    return Selection(cfg, estimate, False, violation)
