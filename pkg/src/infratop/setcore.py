"""Subset algebra on small ground sets.

A subset is an ``int`` bit mask (bit ``i`` set means element ``i`` is a
member).  A family is a tuple of masks, deduplicated and sorted ascending by
the numeric value of the mask.  Nothing here knows about topology.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

SubsetMask = int
SetFamily = tuple[int, ...]

MAX_ELEMENTS = 32
DEFAULT_NAMES = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not 1 <= len(elements) <= MAX_ELEMENTS:
            raise ValueError(f"ground set must have 1..{MAX_ELEMENTS} elements, got {len(elements)}")
        if any(not isinstance(e, str) or not e for e in elements):
            raise ValueError("element names must be non-empty strings")
        if len(set(elements)) != len(elements):
            raise ValueError(f"duplicate element names in {list(elements)}")

    @classmethod
    def of_size(cls, n: int) -> GroundSet:
        """Ground set named ``a, b, c, ...``; numbered names beyond 26."""
        if n <= len(DEFAULT_NAMES):
            return cls(tuple(DEFAULT_NAMES[:n]))
        return cls(tuple(f"x{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> SubsetMask:
        return (1 << self.n) - 1

    def mask(self, names: Iterable[str]) -> SubsetMask:
        index = {e: i for i, e in enumerate(self.elements)}
        m = 0
        for name in names:
            try:
                m |= 1 << index[name]
            except KeyError:
                raise ValueError(f"unknown element {name!r}; ground set is {list(self.elements)}") from None
        return m

    def names(self, a: SubsetMask) -> list[str]:
        return [e for i, e in enumerate(self.elements) if a >> i & 1]

    def format(self, a: SubsetMask) -> str:
        return "{" + ",".join(self.names(a)) + "}"

    def is_valid(self, a: SubsetMask) -> bool:
        return 0 <= a <= self.full


def complement(g: GroundSet, a: SubsetMask) -> SubsetMask:
    return g.full ^ a


def meet(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    return a & b


def join(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    return a | b


def minus(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    return a & ~b


def is_subset(a: SubsetMask, b: SubsetMask) -> bool:
    return a & ~b == 0


def popcount(a: SubsetMask) -> int:
    return bin(a).count("1")


def make_family(members: Iterable[SubsetMask]) -> SetFamily:
    """Deduplicate and put members into canonical (ascending) order."""
    return tuple(sorted(set(members)))


def encode_family(f: Iterable[SubsetMask]) -> int:
    """Bit vector over the power set: bit ``m`` is set iff ``m`` is a member."""
    code = 0
    for m in f:
        code |= 1 << m
    return code


def decode_family(code: int) -> SetFamily:
    out = []
    m = 0
    while code:
        if code & 1:
            out.append(m)
        code >>= 1
        m += 1
    return tuple(out)


@lru_cache(maxsize=None)
def permutation_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """For every permutation of ``range(n)``, the induced map on all 2^n masks."""
    tables = []
    for perm in permutations(range(n)):
        table = []
        for m in range(1 << n):
            image = 0
            for i in range(n):
                if m >> i & 1:
                    image |= 1 << perm[i]
            table.append(image)
        tables.append(tuple(table))
    return tuple(tables)


def apply_permutation(perm: Sequence[int], a: SubsetMask) -> SubsetMask:
    image = 0
    for i, target in enumerate(perm):
        if a >> i & 1:
            image |= 1 << target
    return image


def canonical_form(g: GroundSet, f: Iterable[SubsetMask]) -> SetFamily:
    """Lexicographically least image of ``f`` over all permutations of the ground set.

    Brute force over n! relabelings; intended for n <= 5.
    """
    members = tuple(f)
    best: SetFamily | None = None
    for table in permutation_tables(g.n):
        image = tuple(sorted({table[m] for m in members}))
        if best is None or image < best:
            best = image
    assert best is not None
    return best
