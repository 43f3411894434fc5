"""Squarefree integers, lcm labels of every nonempty subset, and condition C.

A squarefree integer is identified with its set of prime factors, so the
lcm of several inputs is the product of the union of their prime sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from ._enum import bits_of
from .counting import count_covering_inclusion_exclusion, parity
from .errors import (
    ConsistencyError,
    LcmOverflow,
    NotSquarefree,
    OutOfRange,
    TheoremViolation,
    TooManyInputs,
)
from .family import build_family, is_dominant, private_elements

__all__ = [
    "SquarefreeInt",
    "MultifaceLabeling",
    "ConditionC",
    "DividedCount",
    "squarefree_factorize",
    "multiface_labels",
    "condition_c",
    "all_labels_distinct",
    "count_dominated_divisors",
]

MAX_VALUE = 2**63 - 1
MAX_INPUTS = 20
DIRECT_DIVISOR_LIMIT = 10**12
MAX_DIRECT_PRIMES = 20

# deterministic Miller-Rabin bases for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class SquarefreeInt:
    value: int
    primes: tuple[int, ...]

    def __post_init__(self):
        if math.prod(self.primes) != self.value or len(set(self.primes)) != len(self.primes):
            raise ValueError(f"{self.primes} is not a squarefree factorisation of {self.value}")

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class MultifaceLabeling:
    inputs: tuple[SquarefreeInt, ...]
    labels: dict[tuple[int, ...], int]

    @property
    def top(self) -> int:
        return self.labels[tuple(range(len(self.inputs)))]

    def to_text(self) -> str:
        return "".join(" ".join(map(str, S)) + " " + str(v) + "\n" for S, v in self.labels.items())

    def to_dict(self) -> dict:
        return {
            "inputs": [a.value for a in self.inputs],
            "labels": [{"subset": list(S), "label": v} for S, v in self.labels.items()],
        }


@dataclass(frozen=True)
class ConditionC:
    holds: bool
    witnesses: tuple[int, ...] | None


@dataclass(frozen=True)
class DividedCount:
    n_size: int
    parity: str
    direct: int | None = None


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def squarefree_factorize(n: int) -> SquarefreeInt:
    """Factor ``n`` by trial division and reject repeated primes.

    Trial division stops as soon as the remaining cofactor is prime, which
    keeps inputs with one large prime factor fast.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("expected an int")
    if not 2 <= n <= MAX_VALUE:
        raise OutOfRange(f"{n} is outside [2, 2**63 - 1]")
    primes = []
    rest = n
    p = 2
    cofactor_prime = _is_probable_prime(rest)
    while not cofactor_prime and p * p <= rest:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise NotSquarefree(f"{p}^2 divides {n}")
            primes.append(p)
            cofactor_prime = _is_probable_prime(rest)
        p += 1 if p == 2 else 2
    if rest > 1:
        primes.append(rest)
    return SquarefreeInt(n, tuple(primes))


def _as_squarefree(a: Sequence[SquarefreeInt | int]) -> tuple[SquarefreeInt, ...]:
    return tuple(x if isinstance(x, SquarefreeInt) else squarefree_factorize(x) for x in a)


def _check_k(k: int, cap: int) -> None:
    if k < 1:
        raise ValueError("need at least one input")
    if k > cap:
        raise TooManyInputs(f"{k} inputs exceeds the cap of {cap}")


def multiface_labels(a: Sequence[SquarefreeInt | int], cap: int = MAX_INPUTS) -> MultifaceLabeling:
    """Label every nonempty subset of the inputs with the lcm of its members.

    Keys are sorted index tuples, in ascending bitmask order. Labels above
    ``2**63 - 1`` raise :class:`LcmOverflow`.
    """
    inputs = _as_squarefree(a)
    k = len(inputs)
    _check_k(k, cap)
    table = [1] * (1 << k)
    labels = {}
    for S in range(1, 1 << k):
        low = S & -S
        value = math.lcm(table[S ^ low], inputs[low.bit_length() - 1].value)
        if value > MAX_VALUE:
            raise LcmOverflow(f"lcm of inputs {bits_of(S)} exceeds 2**63 - 1")
        table[S] = value
        labels[tuple(bits_of(S))] = value
    return MultifaceLabeling(inputs, labels)


def _prime_family(inputs: Sequence[SquarefreeInt]):
    return build_family([[str(p) for p in x.primes] for x in inputs])


def condition_c(a: Sequence[SquarefreeInt | int]) -> ConditionC:
    """Does every input have a prime factor dividing no other input?"""
    inputs = _as_squarefree(a)
    if not inputs:
        raise ValueError("need at least one input")
    F = _prime_family(inputs)
    if not is_dominant(F):
        return ConditionC(False, None)
    witnesses = tuple(min(int(t) for t in F.universe.names(m)) for m in private_elements(F))
    return ConditionC(True, witnesses)


def all_labels_distinct(a: Sequence[SquarefreeInt | int], cap: int = MAX_INPUTS) -> bool:
    labels = multiface_labels(a, cap).labels.values()
    return len(set(labels)) == len(labels)


def _direct_divisor_count(inputs: Sequence[SquarefreeInt], top: int) -> int:
    primes = sorted(set().union(*(x.primes for x in inputs)))
    count = 0
    for S in range(1 << len(primes)):
        d = math.prod(primes[i] for i in bits_of(S))
        if top % d == 0 and any(d % x.value == 0 for x in inputs):
            count += 1
    return count


def count_dominated_divisors(
    a: Sequence[SquarefreeInt | int],
    max_sets: int | None = None,
) -> DividedCount:
    """Count divisors of ``lcm(a)`` divisible by at least one input.

    The count comes from covering subsets of the prime-set family; when the
    lcm is at most ``10**12`` it is also obtained by testing every divisor.
    """
    inputs = _as_squarefree(a)
    if not inputs:
        raise ValueError("need at least one input")
    F = _prime_family(inputs)
    n_size = count_covering_inclusion_exclusion(F, max_sets)

    top = reduce(math.lcm, (x.value for x in inputs))
    direct = None
    if top <= DIRECT_DIVISOR_LIMIT and len(F.universe) <= MAX_DIRECT_PRIMES:
        direct = _direct_divisor_count(inputs, top)
        if direct != n_size:
            raise ConsistencyError(f"divisor counts disagree: {n_size} vs {direct}")
    if n_size % 2 == 0 and is_dominant(F):
        raise TheoremViolation(f"condition C holds but |N| = {n_size} is even")
    return DividedCount(n_size, parity(n_size), direct)
