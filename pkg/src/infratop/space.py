"""Infra-topological spaces and their primitive operators.

An infra topology on X is a family of subsets containing the empty set and X
that is closed under finite intersections.  Unlike a topology it need not be
closed under unions, so the interior of a set is not always open and the
closure is not always closed.  The operators below compute the values
straight from their definitions and never assume otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .setcore import GroundSet, SetFamily, SubsetMask, encode_family, make_family


class ValidationError(ValueError):
    """A family that is not an infra topology.

    ``missing_meets`` lists every pair ``(o1, o2, o1 & o2)`` whose
    intersection is absent from the family.
    """

    def __init__(
        self,
        message: str,
        *,
        missing_empty: bool = False,
        missing_full: bool = False,
        missing_meets: Sequence[tuple[int, int, int]] = (),
    ) -> None:
        super().__init__(message)
        self.missing_empty = missing_empty
        self.missing_full = missing_full
        self.missing_meets = list(missing_meets)


class MissingEmptyOrFull(ValidationError):
    pass


class NotMeetClosed(ValidationError):
    @property
    def witness(self) -> tuple[int, int]:
        o1, o2, _ = self.missing_meets[0]
        return o1, o2


@dataclass(frozen=True)
class InfraSpace:
    """A validated pair (ground set, infra-open family).

    Build instances with :func:`validate` or :meth:`from_names`; the
    constructor itself does not check the axioms.
    """

    ground: GroundSet
    opens: SetFamily = field(default=())

    @classmethod
    def from_names(cls, elements: Iterable[str], opens: Iterable[Iterable[str]]) -> InfraSpace:
        g = GroundSet(tuple(elements))
        return validate(g, [g.mask(o) for o in opens])

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> SubsetMask:
        return self.ground.full

    @cached_property
    def closed(self) -> SetFamily:
        return make_family(self.full ^ o for o in self.opens)

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    @property
    def encoding(self) -> int:
        return encode_family(self.opens)

    def is_open(self, a: SubsetMask) -> bool:
        return a in self.open_set

    def is_closed(self, a: SubsetMask) -> bool:
        return (self.full ^ a) in self.open_set

    def fmt(self, a: SubsetMask) -> str:
        return self.ground.format(a)

    def describe(self) -> str:
        return "{" + ", ".join(self.fmt(o) for o in self.opens) + "}"


def missing_meets(f: Iterable[SubsetMask]) -> list[tuple[int, int, int]]:
    members = make_family(f)
    present = set(members)
    out = []
    for i, o1 in enumerate(members):
        for o2 in members[i + 1:]:
            if (o1 & o2) not in present:
                out.append((o1, o2, o1 & o2))
    return out


def validate(g: GroundSet, f: Iterable[SubsetMask]) -> InfraSpace:
    members = make_family(f)
    for m in members:
        if not g.is_valid(m):
            raise ValidationError(f"subset mask {m} is outside the ground set")
    present = set(members)
    no_empty = 0 not in present
    no_full = g.full not in present
    meets = missing_meets(members)
    if no_empty or no_full or meets:
        parts = []
        if no_empty:
            parts.append("empty set missing")
        if no_full:
            parts.append("X missing")
        for o1, o2, m in meets:
            parts.append(f"{g.format(o1)} & {g.format(o2)} = {g.format(m)} missing")
        cls = MissingEmptyOrFull if (no_empty or no_full) else NotMeetClosed
        raise cls(
            "not an infra topology: " + "; ".join(parts),
            missing_empty=no_empty,
            missing_full=no_full,
            missing_meets=meets,
        )
    return InfraSpace(g, members)


def complete(g: GroundSet, f: Iterable[SubsetMask]) -> tuple[InfraSpace, SetFamily]:
    """Close ``f`` under pairwise intersections (adding the empty set and X).

    Returns the space and the sets that had to be added.
    """
    start = set(f) | {0, g.full}
    members = set(start)
    frontier = list(members)
    while frontier:
        new = []
        for a in frontier:
            for b in list(members):
                m = a & b
                if m not in members:
                    members.add(m)
                    new.append(m)
        frontier = new
    added = make_family(m for m in members if m not in set(f))
    return validate(g, members), added


def closed_sets(s: InfraSpace) -> SetFamily:
    return s.closed


def interior(s: InfraSpace, a: SubsetMask) -> SubsetMask:
    out = 0
    for o in s.opens:
        if o & ~a == 0:
            out |= o
    return out


def closure(s: InfraSpace, a: SubsetMask) -> SubsetMask:
    out = s.full
    for c in s.closed:
        if a & ~c == 0:
            out &= c
    return out


def exterior(s: InfraSpace, a: SubsetMask) -> SubsetMask:
    return interior(s, s.full ^ a)


def boundary(s: InfraSpace, a: SubsetMask) -> SubsetMask:
    # X \ (int(A) | ext(A)); the other parse contradicts bd(empty) = empty
    return s.full & ~(interior(s, a) | exterior(s, a))


def derived_set(s: InfraSpace, a: SubsetMask) -> SubsetMask:
    out = 0
    for x in range(s.n):
        bit = 1 << x
        if all(a & o & ~bit for o in s.opens if o & bit):
            out |= bit
    return out
