from typing import Iterator


def is_pow2(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


def log2(value: int) -> int:
    """Exact base-2 logarithm of a power of two."""
    if not is_pow2(value):
        raise ValueError(f"{value} is not a power of two")
    return value.bit_length() - 1


def clog2(value: int) -> int:
    """Ceiling base-2 logarithm, 0 for values <= 1."""
    return max(0, (value - 1).bit_length())


def pow2_upto(limit: int) -> Iterator[int]:
    value = 1
    while value <= limit:
        yield value
        value <<= 1


def mask(width: int) -> int:
    return (1 << width) - 1


def onehot_index(value: int) -> int:
    """Index of the single set bit, -1 when none is set."""
    if value == 0:
        return -1
    if value & (value - 1):
        raise ValueError(f"{value:#x} is not one-hot")
    return value.bit_length() - 1
