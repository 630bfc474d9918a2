from typing import List, Sequence, Tuple, TypeVar

import numpy as np

from .ppa import PPAEstimate

T = TypeVar("T")


def dominated_mask(objectives: np.ndarray) -> np.ndarray:
    """
    Flags rows dominated by some other row (all <=, at least one <).

    Args:
        objectives (np.ndarray): Shape (n, k), every objective minimized.

    Returns:
        np.ndarray: Boolean mask of length n.
    """
    if len(objectives) == 0:
        return np.zeros(0, dtype=bool)
    # [i, j] compares candidate dominator j against point i
    no_worse = (objectives[None, :, :] <= objectives[:, None, :]).all(axis=2)
    better = (objectives[None, :, :] < objectives[:, None, :]).any(axis=2)
    return (no_worse & better).any(axis=1)


def pareto_front(points: Sequence[Tuple[T, PPAEstimate]]) -> List[Tuple[T, PPAEstimate]]:
    """
    Keeps the points not dominated under (area, t_cycle, e_op), in input order.

    Args:
        points (Sequence[Tuple[T, PPAEstimate]]): Configuration/estimate pairs.

    Returns:
        List[Tuple[T, PPAEstimate]]: The non-dominated pairs.
    """
    objectives = np.array([estimate.objectives for _, estimate in points], dtype=float)
    mask = dominated_mask(objectives.reshape(len(points), 3))
    return [point for point, dominated in zip(points, mask) if not dominated]
