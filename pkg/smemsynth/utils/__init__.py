from .bits import clog2, is_pow2, log2, mask, onehot_index, pow2_upto
from .config import config
from .logger import logger
from .naming import ba_instance_name
from .pool import parallel_map

__all__ = [
    "ba_instance_name",
    "config",
    "logger",
    "parallel_map",
    "clog2",
    "is_pow2",
    "log2",
    "mask",
    "onehot_index",
    "pow2_upto",
]
