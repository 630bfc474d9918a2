from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from smemsynth.base import ConstraintError
from smemsynth.utils import is_pow2


class UserSpec(BaseModel):
    """
    A 1R-1W memory request.

    Attributes:
        words (int): Depth.
        bits (int): Word width.
        aspect_ratio_target (Optional[float]): Target height/width, None when unconstrained.
        aspect_ratio_tol (float): Allowed relative deviation from the target.
        t_max (Optional[float]): Cycle-time limit in ps.
        e_max (Optional[float]): Energy-per-operation limit in fJ.
        bounds (Optional[Tuple[int, int, int, int]]): Upper limits on R, C, K, M.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    words: int = Field(ge=1)
    bits: int = Field(ge=1)
    aspect_ratio_target: Optional[float] = Field(default=None, gt=0)
    aspect_ratio_tol: float = Field(default=0.25, ge=0, lt=1)
    t_max: Optional[float] = Field(default=None, gt=0)
    e_max: Optional[float] = Field(default=None, gt=0)
    bounds: Optional[Tuple[int, int, int, int]] = None


class MemoryConfig(BaseModel):
    """One synthesis candidate: BA+ variant, bank rows R, bank columns C, BA+ per bank K, column-mux factor M."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    variant: str
    R: int = 1
    C: int = 1
    K: int = 1
    M: int = 1

    @model_validator(mode="after")
    def _check_pow2(self) -> "MemoryConfig":
        for label in ("R", "C", "K", "M"):
            value = getattr(self, label)
            if not is_pow2(value):
                raise ValueError(f"{label}={value} is not a power of two")
        return self

    @property
    def key(self) -> Tuple[str, int, int, int, int]:
        return (self.variant, self.R, self.C, self.K, self.M)

    @property
    def label(self) -> str:
        return f"{self.variant}_r{self.R}c{self.C}k{self.K}m{self.M}"

    def words(self, B: int) -> int:
        return self.R * self.K * B * self.M

    def bits(self, W: int) -> int:
        if (self.C * W) % self.M:
            raise ConstraintError(f"{self.label}: M={self.M} does not divide C*W={self.C * W}")
        return self.C * W // self.M

    def __lt__(self, other: "MemoryConfig") -> bool:
        return self.key < other.key
