"""Vectorised enumeration helpers over bitmask families.

Index ``J`` of every returned table is the bitmask of the subfamily it
describes, so ascending index order is the canonical enumeration order.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

DEFAULT_MAX_SETS = 24
DEFAULT_MAX_UNION = 24

# numpy can only hold masks that fit into an unsigned 64-bit word
_WORD = 64


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def subfamily_unions(masks: Sequence[int], width: int):
    """Union of every subfamily, indexed by subfamily bitmask.

    Returns a ``uint64`` array when the ground set fits in a word and a list
    of Python ints otherwise.
    """
    n = len(masks)
    if width <= _WORD:
        unions = np.zeros(1 << n, dtype=np.uint64)
        for i, m in enumerate(masks):
            half = 1 << i
            np.bitwise_or(unions[:half], np.uint64(m), out=unions[half : 2 * half])
        return unions
    unions = [0] * (1 << n)
    for i, m in enumerate(masks):
        half = 1 << i
        for j in range(half):
            unions[half + j] = unions[j] | m
    return unions


def union_sizes(unions) -> np.ndarray:
    if isinstance(unions, np.ndarray):
        return np.bitwise_count(unions).astype(np.int64)
    return np.fromiter((popcount(u) for u in unions), dtype=np.int64, count=len(unions))


def subfamily_sizes(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)


def weighted_power_sum(exponents: np.ndarray, signs: np.ndarray | None = None) -> int:
    """Exact ``sum(sign * 2**e)`` using a histogram, so the big-int work is tiny."""
    if signs is None:
        hist = np.bincount(exponents)
        return sum(int(c) << e for e, c in enumerate(hist) if c)
    total = 0
    for sign in (1, -1):
        sel = exponents[signs == sign]
        if sel.size:
            hist = np.bincount(sel)
            total += sign * sum(int(c) << e for e, c in enumerate(hist) if c)
    return total
