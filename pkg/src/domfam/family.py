"""Finite families of finite nonempty sets, stored as bitmasks over a universe.

Members are Python ints: bit ``k`` set means the element with ordinal ``k``
belongs to the member. Families keep input order and allow repeated members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _enum
from ._enum import DEFAULT_MAX_SETS, bits_of
from .errors import EmptyFamily, EmptySet, FamilyTooLarge, NotDominant, ParseError, SingletonFamily

__all__ = [
    "Universe",
    "SetFamily",
    "UnionCheck",
    "build_family",
    "family_union",
    "private_elements",
    "is_dominant",
    "is_dominant_direct",
    "subfamily_union",
    "subfamily_unions_distinct",
    "reduce_family",
    "parse_family",
    "format_family",
]


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]
    lookup: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lookup = {name: k for k, name in enumerate(self.labels)}
        if len(lookup) != len(self.labels):
            raise ValueError("universe labels must be distinct")
        object.__setattr__(self, "lookup", lookup)

    def __len__(self) -> int:
        return len(self.labels)

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[k] for k in bits_of(mask))

    def mask(self, names: Iterable[str]) -> int:
        out = 0
        for name in names:
            out |= 1 << self.lookup[name]
        return out


@dataclass(frozen=True)
class SetFamily:
    universe: Universe
    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise EmptyFamily("a family needs at least one member")
        limit = 1 << len(self.universe)
        for i, m in enumerate(self.members):
            if m <= 0:
                raise EmptySet(i + 1)
            if m >= limit:
                raise ValueError(f"member {i} uses an ordinal outside the universe")

    def __len__(self) -> int:
        return len(self.members)

    def member_names(self, i: int) -> tuple[str, ...]:
        return self.universe.names(self.members[i])


@dataclass(frozen=True)
class UnionCheck:
    distinct: bool
    collision: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def build_family(sets: Iterable[Iterable[str]]) -> SetFamily:
    labels: dict[str, int] = {}
    members = []
    for idx, tokens in enumerate(sets, start=1):
        mask = 0
        for tok in tokens:
            k = labels.setdefault(tok, len(labels))
            mask |= 1 << k
        if not mask:
            raise EmptySet(idx)
        members.append(mask)
    if not members:
        raise EmptyFamily("a family needs at least one member")
    return SetFamily(Universe(tuple(labels)), tuple(members))


def family_from_masks(masks: Sequence[int], labels: Sequence[str] | None = None) -> SetFamily:
    """Wrap raw bitmasks; labels default to the ordinals as text."""
    width = max(masks, default=0).bit_length()
    if labels is None:
        labels = [str(k) for k in range(width)]
    return SetFamily(Universe(tuple(labels)), tuple(masks))


def family_union(F: SetFamily) -> int:
    out = 0
    for m in F.members:
        out |= m
    return out


def _occurrence_masks(members: Sequence[int]) -> tuple[int, int]:
    # elements seen at least once / at least twice
    once = twice = 0
    for m in members:
        twice |= once & m
        once |= m
    return once, twice


def private_elements(F: SetFamily) -> list[int]:
    _, twice = _occurrence_masks(F.members)
    return [m & ~twice for m in F.members]


def is_dominant(F: SetFamily) -> bool:
    _, twice = _occurrence_masks(F.members)
    return all(m & ~twice for m in F.members)


def is_dominant_direct(F: SetFamily) -> bool:
    members = F.members
    for i, m in enumerate(members):
        rest = 0
        for j, other in enumerate(members):
            if j != i:
                rest |= other
        if m & ~rest == 0:
            return False
    return True


def subfamily_union(F: SetFamily, J: Iterable[int]) -> int:
    out = 0
    for i in J:
        out |= F.members[i]
    return out


def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_MAX_SETS if cap is None else cap
    if n > cap:
        raise FamilyTooLarge(f"{n} members exceeds the enumeration cap of {cap}")


def subfamily_unions_distinct(F: SetFamily, cap: int | None = None) -> UnionCheck:
    """Enumerate all ``2**n`` subfamilies and look for two with equal unions.

    The reported collision is ``(earlier, later)`` where ``later`` is the
    smallest subfamily bitmask whose union already occurred.
    """
    n = len(F)
    _check_cap(n, cap)
    unions = _enum.subfamily_unions(F.members, len(F.universe))
    if isinstance(unions, np.ndarray):
        _, first, inverse = np.unique(unions, return_index=True, return_inverse=True)
        first_seen = first[inverse]
        dup = np.nonzero(first_seen != np.arange(unions.size))[0]
        if dup.size == 0:
            return UnionCheck(True)
        later = int(dup[0])
        earlier = int(first_seen[later])
    else:
        seen: dict[int, int] = {}
        for J, u in enumerate(unions):
            if u in seen:
                earlier, later = seen[u], J
                break
            seen[u] = J
        else:
            return UnionCheck(True)
    return UnionCheck(False, (tuple(bits_of(earlier)), tuple(bits_of(later))))


def reduce_family(F: SetFamily, i: int) -> SetFamily:
    """Drop member ``i`` and remove its elements from every other member.

    The universe is shrunk to the elements that survive, keeping their order.
    """
    if len(F) < 2:
        raise SingletonFamily("cannot reduce a single-member family")
    if not is_dominant(F):
        raise NotDominant("reduction is only defined for dominant families")
    removed = F.members[i]
    rest = [m & ~removed for j, m in enumerate(F.members) if j != i]
    keep = 0
    for m in rest:
        keep |= m
    old = bits_of(keep)
    remap = {k: new for new, k in enumerate(old)}
    members = tuple(sum(1 << remap[k] for k in bits_of(m)) for m in rest)
    labels = tuple(F.universe.labels[k] for k in old)
    return SetFamily(Universe(labels), members)


def parse_family(text: str) -> SetFamily:
    """Parse one-set-per-line text; ``#`` lines and blank lines are skipped."""
    sets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if not tokens:
            raise ParseError("set has no elements", lineno)
        sets.append(tokens)
    if not sets:
        raise ParseError("family file contains no sets")
    return build_family(sets)


def format_family(F: SetFamily) -> str:
    return "".join(" ".join(F.member_names(i)) + "\n" for i in range(len(F)))
