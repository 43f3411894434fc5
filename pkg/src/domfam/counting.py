"""Exact counts of the subsets of ``A = union(F)`` that contain a member of ``F``.

Two independent routes are provided: brute force over all subsets of ``A``
and inclusion-exclusion over subfamilies. All counts are Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _enum
from ._enum import DEFAULT_MAX_SETS, DEFAULT_MAX_UNION, bits_of, popcount
from .errors import FamilyTooLarge, MethodDisagreement, NoApplicableMethod, TheoremViolation, UnionTooLarge
from .family import SetFamily, family_union, is_dominant

__all__ = [
    "BRUTE",
    "INCLUSION_EXCLUSION",
    "CountReport",
    "PairCountReport",
    "count_covering_bruteforce",
    "count_covering_inclusion_exclusion",
    "count_covering_subsets",
    "count_report",
    "grinberg_pair_count",
    "full_union_subfamily_count",
]

BRUTE = "brute"
INCLUSION_EXCLUSION = "inclusion_exclusion"
METHODS = (BRUTE, INCLUSION_EXCLUSION)

_CHUNK = 1 << 20


def parity(n: int) -> str:
    return "odd" if n & 1 else "even"


@dataclass(frozen=True)
class CountReport:
    total_subsets: int
    covering: int
    noncovering: int
    covering_parity: str
    methods_used: tuple[str, ...]
    agreement: bool

    def to_dict(self) -> dict:
        return {
            "total_subsets": self.total_subsets,
            "covering": self.covering,
            "noncovering": self.noncovering,
            "covering_parity": self.covering_parity,
            "methods_used": list(self.methods_used),
            "agreement": self.agreement,
        }


@dataclass(frozen=True)
class PairCountReport:
    via_subsets: int | None
    via_subfamilies: int
    parity: str

    def to_dict(self) -> dict:
        return {
            "via_subsets": self.via_subsets,
            "via_subfamilies": self.via_subfamilies,
            "parity": self.parity,
        }


def _compress(F: SetFamily) -> tuple[list[int], int]:
    """Re-index members onto the ordinals of ``A`` only; returns (masks, |A|)."""
    ground = bits_of(family_union(F))
    pos = {k: i for i, k in enumerate(ground)}
    masks = [sum(1 << pos[k] for k in bits_of(m)) for m in F.members]
    return masks, len(ground)


def _check_sets(F: SetFamily, cap: int | None) -> None:
    cap = DEFAULT_MAX_SETS if cap is None else cap
    if len(F) > cap:
        raise FamilyTooLarge(f"{len(F)} members exceeds the enumeration cap of {cap}")


def _check_union(width: int, cap: int | None) -> None:
    cap = DEFAULT_MAX_UNION if cap is None else cap
    if width > cap:
        raise UnionTooLarge(f"|A| = {width} exceeds the brute-force cap of {cap}")


def _subset_blocks(width: int) -> Iterator[np.ndarray]:
    total = 1 << width
    for start in range(0, total, _CHUNK):
        yield np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)


def _contained_counts(X: np.ndarray, masks: list[int]) -> np.ndarray:
    # number of members B with B <= X, per subset X
    count = np.zeros(X.shape, dtype=np.int64)
    for m in masks:
        mm = np.uint64(m)
        count += (X & mm) == mm
    return count


def count_covering_bruteforce(F: SetFamily, max_union: int | None = None) -> int:
    masks, width = _compress(F)
    _check_union(width, max_union)
    covering = 0
    for X in _subset_blocks(width):
        covering += int(np.count_nonzero(_contained_counts(X, masks)))
    return covering


def count_covering_inclusion_exclusion(F: SetFamily, max_sets: int | None = None) -> int:
    _check_sets(F, max_sets)
    masks, width = _compress(F)
    unions = _enum.subfamily_unions(masks, width)
    exponents = width - _enum.union_sizes(unions)[1:]
    signs = np.where(_enum.subfamily_sizes(len(masks))[1:] & 1, 1, -1)
    return _enum.weighted_power_sum(exponents, signs)


def count_covering_subsets(F: SetFamily, over_universe: bool = False, max_sets: int | None = None) -> int:
    """Inclusion-exclusion covering count, optionally over the whole universe.

    Elements of the universe outside ``A`` are free, so each covering subset
    of ``A`` extends in ``2**(|universe| - |A|)`` ways.
    """
    count = count_covering_inclusion_exclusion(F, max_sets)
    if over_universe:
        count <<= len(F.universe) - popcount(family_union(F))
    return count


_COUNTERS = {
    BRUTE: lambda F, sets, union: count_covering_bruteforce(F, union),
    INCLUSION_EXCLUSION: lambda F, sets, union: count_covering_inclusion_exclusion(F, sets),
}


def count_report(
    F: SetFamily,
    methods: Iterable[str] = (INCLUSION_EXCLUSION,),
    max_sets: int | None = None,
    max_union: int | None = None,
) -> CountReport:
    """Count covering subsets with every applicable method and cross-check.

    Methods whose cap is exceeded are skipped. A dominant family with an even
    covering count raises :class:`TheoremViolation`.
    """
    methods = set(methods)
    unknown = methods - set(METHODS)
    if unknown:
        raise ValueError(f"unknown counting method(s): {sorted(unknown)}")
    requested = [m for m in METHODS if m in methods]
    results: dict[str, int] = {}
    skipped = []
    for name in requested:
        try:
            results[name] = _COUNTERS[name](F, max_sets, max_union)
        except (FamilyTooLarge, UnionTooLarge) as exc:
            skipped.append(str(exc))
    if not results:
        raise NoApplicableMethod("; ".join(skipped) or "no counting method requested")

    width = popcount(family_union(F))
    covering = next(iter(results.values()))
    agreement = len(set(results.values())) == 1
    if agreement and is_dominant(F) and covering % 2 == 0:
        raise TheoremViolation(f"dominant family has an even covering count {covering}")
    total = 1 << width
    return CountReport(
        total_subsets=total,
        covering=covering,
        noncovering=total - covering,
        covering_parity=parity(covering),
        methods_used=tuple(results),
        agreement=agreement,
    )


def checked_count_report(F: SetFamily, methods: Iterable[str] = (INCLUSION_EXCLUSION,), **caps) -> CountReport:
    """Like :func:`count_report` but a method disagreement is raised, not reported."""
    report = count_report(F, methods, **caps)
    if not report.agreement:
        raise MethodDisagreement(f"counting methods disagree: {report.methods_used}")
    return report


def grinberg_pair_count(
    F: SetFamily,
    max_sets: int | None = None,
    max_union: int | None = None,
) -> PairCountReport:
    """Count pairs ``(X, J)`` with ``X`` containing every member of ``J``, two ways.

    The subfamily side is always computed; the subset side only when ``|A|``
    is within the brute-force cap.
    """
    _check_sets(F, max_sets)
    masks, width = _compress(F)
    unions = _enum.subfamily_unions(masks, width)
    via_subfamilies = _enum.weighted_power_sum(width - _enum.union_sizes(unions))

    via_subsets = None
    if width <= (DEFAULT_MAX_UNION if max_union is None else max_union):
        hist = np.zeros(len(masks) + 1, dtype=np.int64)
        for X in _subset_blocks(width):
            hist += np.bincount(_contained_counts(X, masks), minlength=len(masks) + 1)
        via_subsets = sum(int(c) << e for e, c in enumerate(hist) if c)
    return PairCountReport(via_subsets, via_subfamilies, parity(via_subfamilies))


def full_union_subfamily_count(F: SetFamily, max_sets: int | None = None) -> int:
    _check_sets(F, max_sets)
    masks, width = _compress(F)
    unions = _enum.subfamily_unions(masks, width)
    full = (1 << width) - 1
    if isinstance(unions, np.ndarray):
        return int(np.count_nonzero(unions == np.uint64(full)))
    return sum(1 for u in unions if u == full)
