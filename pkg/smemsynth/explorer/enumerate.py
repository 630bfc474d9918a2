from typing import List, Optional

from smemsynth.baplus import MacroLibrary, TechParams
from smemsynth.base import ConstraintError
from smemsynth.floorplan.estimate import estimate_dimensions
from smemsynth.utils import is_pow2, logger, pow2_upto

from .spec import MemoryConfig, UserSpec


def meets_aspect_ratio(cfg: MemoryConfig, spec: UserSpec, lib: MacroLibrary, tech: TechParams) -> bool:
    if spec.aspect_ratio_target is None:
        return True
    w_nm, h_nm = estimate_dimensions(cfg, lib, tech)
    target = spec.aspect_ratio_target
    return abs(h_nm / w_nm - target) <= spec.aspect_ratio_tol * target


def enumerate_configs(
    spec: UserSpec, lib: MacroLibrary, tech: Optional[TechParams] = None
) -> List[MemoryConfig]:
    """
    Lists every configuration of every library variant that holds exactly the requested words and bits.

    Args:
        spec (UserSpec): The request.
        lib (MacroLibrary): Nonempty library.
        tech (Optional[TechParams]): Defaults to the library's tech.

    Returns:
        List[MemoryConfig]: Configurations sorted by (variant, R, C, K, M), possibly empty.
    """
    if not len(lib):
        raise ConstraintError("cannot explore an empty library")
    tech = tech or lib.tech
    limit = spec.words
    max_r, max_c, max_k, max_m = spec.bounds or (limit, limit, limit, limit)

    configs: List[MemoryConfig] = []
    for macro in lib:
        for M in pow2_upto(min(limit, max_m)):
            if spec.words % (macro.B * M):
                continue
            rk = spec.words // (macro.B * M)
            if not is_pow2(rk):
                continue
            # width constraint: C*W == bits*M
            if (spec.bits * M) % macro.W:
                continue
            C = spec.bits * M // macro.W
            if not is_pow2(C) or C > min(limit, max_c):
                continue
            for R in pow2_upto(rk):
                K = rk // R
                if R > max_r or K > max_k:
                    continue
                cfg = MemoryConfig(variant=macro.name, R=R, C=C, K=K, M=M)
                if meets_aspect_ratio(cfg, spec, lib, tech):
                    configs.append(cfg)

    configs.sort(key=lambda cfg: cfg.key)
    logger.info(f"Explore: {len(configs)} configs for {spec.words}x{spec.bits}")
    return configs
