"""Monomials, monomial ideals, polarization and the Taylor multidegree certificate.

Monomials are written one per line as whitespace-separated factors ``var``
or ``var^exp``; repeated variables multiply.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from ._enum import DEFAULT_MAX_SETS, bits_of
from .counting import parity
from .errors import FamilyTooLarge, NonDivisorInA, NotATaylorMultidegree, ParseError, TheoremViolation
from .family import build_family, family_from_masks, is_dominant, private_elements

__all__ = [
    "Monomial",
    "MonomialIdeal",
    "GeneratorCount",
    "IdealDominance",
    "CertificateReport",
    "mono_lcm",
    "divides",
    "support",
    "minimal_monomial_generators",
    "polarize",
    "is_dominant_ideal",
    "generators_of_m",
    "minimal_generators_of_m",
    "taylor_parity_certificate",
    "parse_monomial",
    "parse_ideal",
    "format_ideal",
]

_FACTOR = re.compile(r"([^\s^]+)(?:\^(\d+))?")


def polarized_name(var: str, k: int) -> str:
    return f"{var}⟨{k}⟩"


class Monomial:
    """Exponent map ``variable -> exponent >= 1``; the empty map is ``1``.

    Variable order is the order of first appearance and is used for output
    only; equality and hashing ignore it.
    """

    __slots__ = ("_exps", "_key")

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        exps: dict[str, int] = {}
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        for var, e in items:
            if e < 0:
                raise ValueError(f"negative exponent for {var}")
            if e:
                exps[var] = exps.get(var, 0) + e
        self._exps = exps
        self._key = frozenset(exps.items())

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._exps)

    def degree(self, var: str) -> int:
        return self._exps.get(var, 0)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self._exps.items())

    def __bool__(self) -> bool:
        # the unit monomial is falsy
        return bool(self._exps)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if not self._exps:
            return "1"
        return " ".join(v if e == 1 else f"{v}^{e}" for v, e in self._exps.items())

    def __repr__(self):
        return f"Monomial({str(self)!r})"

    def is_squarefree(self) -> bool:
        return all(e == 1 for e in self._exps.values())


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        if any(not g for g in self.generators):
            raise ValueError("the unit monomial is not allowed as a generator")

    @classmethod
    def of(cls, *gens: str | Monomial) -> "MonomialIdeal":
        return cls(tuple(g if isinstance(g, Monomial) else parse_monomial(g) for g in gens))

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class GeneratorCount:
    count: int
    subsets: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class IdealDominance:
    dominant: bool
    witnesses: tuple[str, ...] | None


@dataclass(frozen=True)
class CertificateReport:
    m: Monomial
    A: tuple[Monomial, ...]
    minimal_generators_of_m: tuple[tuple[int, ...], ...]
    union_covers_A: bool
    family_dominant: bool
    certified: bool
    generator_count: int | None
    generator_parity: str | None

    def to_dict(self) -> dict:
        return {
            "m": str(self.m),
            "A": [str(a) for a in self.A],
            "minimal_generators_of_m": [list(S) for S in self.minimal_generators_of_m],
            "union_covers_A": self.union_covers_A,
            "family_dominant": self.family_dominant,
            "certified": self.certified,
            "generator_count": self.generator_count,
            "generator_parity": self.generator_parity,
        }


def parse_monomial(text: str, lineno: int | None = None) -> Monomial:
    factors = []
    for tok in text.split():
        match = _FACTOR.fullmatch(tok)
        if match is None:
            raise ParseError(f"bad factor {tok!r}", lineno)
        var, exp = match.group(1), match.group(2)
        e = 1 if exp is None else int(exp)
        if e < 1:
            raise ParseError(f"exponent of {var} must be positive", lineno)
        factors.append((var, e))
    if not factors:
        raise ParseError("empty monomial", lineno)
    return Monomial(factors)


def parse_ideal(text: str) -> MonomialIdeal:
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        gens.append(parse_monomial(line, lineno))
    if not gens:
        raise ParseError("ideal file contains no generators")
    return MonomialIdeal(tuple(gens))


def format_ideal(M: MonomialIdeal) -> str:
    return "".join(f"{g}\n" for g in M.generators)


def mono_lcm(p: Monomial, q: Monomial) -> Monomial:
    out = p.exponents
    for var, e in q:
        if e > out.get(var, 0):
            out[var] = e
    return Monomial(out)


def lcm_all(monomials: Iterable[Monomial]) -> Monomial:
    return reduce(mono_lcm, monomials, Monomial())


def divides(p: Monomial, q: Monomial) -> bool:
    return all(e <= q.degree(var) for var, e in p)


def support(p: Monomial) -> frozenset[str]:
    return frozenset(p.exponents)


def minimal_monomial_generators(M: MonomialIdeal) -> MonomialIdeal:
    unique = list(dict.fromkeys(M.generators))
    keep = [g for g in unique if not any(h != g and divides(h, g) for h in unique)]
    return MonomialIdeal(tuple(keep))


def polarize(M: MonomialIdeal) -> MonomialIdeal:
    """Replace each ``x^e`` by ``x<1> x<2> ... x<e>`` (angle-bracket indices)."""
    gens = []
    for g in M.generators:
        gens.append(Monomial([(polarized_name(var, k), 1) for var, e in g for k in range(1, e + 1)]))
    return MonomialIdeal(tuple(gens))


def is_dominant_ideal(M: MonomialIdeal) -> IdealDominance:
    """Dominance of the supports of the polarized minimal generators.

    Witnesses are listed per minimal generator. A variable that never occurs
    with exponent above 1 is reported under its original name, since
    polarization only renames it.
    """
    minimal = minimal_monomial_generators(M)
    polar = polarize(minimal)
    F = build_family([[var for var, _ in g] for g in polar.generators])
    if not is_dominant(F):
        return IdealDominance(False, None)
    max_exp: dict[str, int] = {}
    for g in minimal.generators:
        for var, e in g:
            max_exp[var] = max(max_exp.get(var, 0), e)
    plain = {polarized_name(v, 1): v for v, e in max_exp.items() if e == 1}
    witnesses = []
    for m in private_elements(F):
        name = F.universe.labels[bits_of(m)[0]]
        witnesses.append(plain.get(name, name))
    return IdealDominance(True, tuple(witnesses))


def _hit_masks(A: Sequence[Monomial], m: Monomial) -> list[int]:
    """Per variable of ``m``: bitmask of the members of ``A`` attaining its degree.

    A subfamily has lcm ``m`` iff it meets every one of these masks.
    """
    for i, a in enumerate(A):
        if not divides(a, m):
            raise NonDivisorInA(f"A[{i}] = {a} does not divide {m}")
    return [sum(1 << i for i, a in enumerate(A) if a.degree(var) == e) for var, e in m]


def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_MAX_SETS if cap is None else cap
    if n > cap:
        raise FamilyTooLarge(f"|A| = {n} exceeds the enumeration cap of {cap}")


def _generator_table(A: Sequence[Monomial], m: Monomial, cap: int | None) -> np.ndarray:
    _check_cap(len(A), cap)
    hits = _hit_masks(A, m)
    S = np.arange(1 << len(A), dtype=np.uint64)
    ok = S != 0
    for h in hits:
        ok &= (S & np.uint64(h)) != 0
    return ok


def generators_of_m(
    A: Sequence[Monomial],
    m: Monomial,
    list_subsets: bool = False,
    cap: int | None = None,
) -> GeneratorCount:
    """Count nonempty subfamilies of ``A`` whose lcm is ``m``."""
    ok = _generator_table(A, m, cap)
    subsets = None
    if list_subsets:
        subsets = tuple(tuple(bits_of(int(S))) for S in np.nonzero(ok)[0])
    return GeneratorCount(int(np.count_nonzero(ok)), subsets)


def minimal_generators_of_m(A: Sequence[Monomial], m: Monomial, cap: int | None = None) -> tuple[tuple[int, ...], ...]:
    ok = _generator_table(A, m, cap)
    S = np.arange(ok.size, dtype=np.uint64)
    minimal = ok.copy()
    # generators are closed upwards, so checking single removals suffices
    for i in range(len(A)):
        bit = np.uint64(1 << i)
        has = (S & bit) != 0
        minimal &= ~(has & ok[S ^ bit])
    return tuple(tuple(bits_of(int(J))) for J in np.nonzero(minimal)[0])


def minimal_transversals(edges: Sequence[int]) -> list[int]:
    """Minimal sets meeting every edge (Berge's algorithm), sorted by bitmask."""
    current = [0]
    for edge in edges:
        grown = set()
        for T in current:
            if T & edge:
                grown.add(T)
            else:
                grown.update(T | (1 << i) for i in bits_of(edge))
        current = [T for T in grown if not any(U != T and U & T == U for U in grown)]
    return sorted(current)


def taylor_parity_certificate(M: MonomialIdeal, m: Monomial, cap: int | None = None) -> CertificateReport:
    """Decide whether the Taylor basis count in multidegree ``m`` is forced odd.

    ``A`` is the set of minimal generators of ``M`` dividing ``m``. The
    certificate holds when the minimal generators of ``m`` in ``A`` cover
    ``A`` and form a dominant family. Above the enumeration cap the minimal
    generators are found by transversal search and no count is given.
    """
    gens = minimal_monomial_generators(M).generators
    A = tuple(g for g in gens if divides(g, m))
    if not A or lcm_all(A) != m:
        raise NotATaylorMultidegree(f"{m} is not the lcm of any set of minimal generators")

    count = None
    try:
        family = minimal_generators_of_m(A, m, cap)
        count = generators_of_m(A, m, cap=cap).count
    except FamilyTooLarge:
        family = tuple(tuple(bits_of(T)) for T in minimal_transversals(_hit_masks(A, m)))

    masks = [sum(1 << i for i in S) for S in family]
    covered = 0
    for mask in masks:
        covered |= mask
    union_covers = covered == (1 << len(A)) - 1
    labels = [str(a) for a in A]
    dominant = is_dominant(family_from_masks(masks, labels[: covered.bit_length()]))
    certified = union_covers and dominant
    if certified and count is not None and count % 2 == 0:
        raise TheoremViolation(f"certified multidegree {m} has an even generator count {count}")
    return CertificateReport(
        m=m,
        A=A,
        minimal_generators_of_m=family,
        union_covers_A=union_covers,
        family_dominant=dominant,
        certified=certified,
        generator_count=count,
        generator_parity=None if count is None else parity(count),
    )
