"""
Bit manipulation helpers shared by the analyzers.

A sequence period is held as a Python int whose bit i is the term s_i, so the
helpers here work on plain non-negative integers.
"""

from functools import lru_cache
from itertools import combinations, islice
from math import comb

import numpy as np


def valuation2(value):
    """
    2-adic valuation: the exponent y in value = (2x+1)·2^y.

    :param value: int - Non-zero integer (sign is ignored).
    :return: int - Number of trailing zero bits.
    """
    value = abs(value)
    if value == 0:
        raise ValueError("The 2-adic valuation of zero is undefined")
    return (value & -value).bit_length() - 1


def popcount(value):
    if value < 0:
        raise ValueError("Negative values are not supported")
    return value.bit_count()


def is_power_of_two(value):
    return value > 0 and value & (value - 1) == 0


def iter_set_bits(value):
    """
    Iterate the indices of set bits in ascending order. E.g. 24 yields 3 then 4.
    """
    if value < 0:
        raise ValueError("Negative values are not supported")
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def mask_from_positions(positions):
    mask = 0
    for position in positions:
        mask |= 1 << position
    return mask


def patterns_of_weight(length, weight, start=0, stop=None):
    """
    Masks of exactly `weight` set bits among `length`, lexicographic by support.

    :param length: int - Number of bit positions.
    :param weight: int - Number of set bits.
    :param start: int - Index of the first pattern to yield.
    :param stop: int - Index one past the last pattern (None for all).
    """
    for support in islice(combinations(range(length), weight), start, stop):
        yield mask_from_positions(support)


def pattern_count(length, max_weight):
    """Number of masks of weight 0..max_weight among `length` positions."""
    return sum(comb(length, w) for w in range(min(max_weight, length) + 1))


@lru_cache(maxsize=256)
def weight_class_array(length, weight):
    """
    All masks of one weight as a read-only uint64 array (length <= 64).
    """
    if length > 64:
        raise ValueError("Vectorized masks support at most 64 positions")
    masks = np.fromiter(
        patterns_of_weight(length, weight), dtype=np.uint64, count=comb(length, weight)
    )
    masks.setflags(write=False)
    return masks
