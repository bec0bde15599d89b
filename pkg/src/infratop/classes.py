"""Regular-open sets, delta operators and the generalized open-set classes.

The delta-closure is the meet of regular-*closed* supersets, i.e. the dual
``X \\ delta_interior(X \\ A)``.  Passing ``literal=True`` switches to the
meet of regular-*open* supersets instead; that variant exists only so the
theorem checker can compare the two readings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import space as sp
from .genops import OperatorTables, operator_tables
from .setcore import SetFamily, SubsetMask, make_family
from .space import InfraSpace


class ClassId(str, enum.Enum):
    OPEN = "open"
    REGULAR_OPEN = "regular-open"
    DELTA_OPEN = "delta-open"
    PRE_OPEN = "pre-open"
    SEMI_OPEN = "semi-open"
    DELTA_PRE_OPEN = "delta-pre-open"
    DELTA_SEMI_OPEN = "delta-semi-open"
    E_OPEN = "e-open"
    E_STAR_OPEN = "e-star-open"
    A_OPEN = "a-open"
    BETA_OPEN = "beta-open"

    CLOSED = "closed"
    REGULAR_CLOSED = "regular-closed"
    DELTA_CLOSED = "delta-closed"
    PRE_CLOSED = "pre-closed"
    SEMI_CLOSED = "semi-closed"
    DELTA_PRE_CLOSED = "delta-pre-closed"
    DELTA_SEMI_CLOSED = "delta-semi-closed"
    E_CLOSED = "e-closed"
    E_STAR_CLOSED = "e-star-closed"
    A_CLOSED = "a-closed"
    BETA_CLOSED = "beta-closed"

    def __str__(self) -> str:
        return self.value

    @property
    def is_closed_class(self) -> bool:
        return self.value == "closed" or self.value.endswith("-closed")

    @property
    def dual(self) -> ClassId:
        if self is ClassId.OPEN:
            return ClassId.CLOSED
        if self is ClassId.CLOSED:
            return ClassId.OPEN
        if self.is_closed_class:
            return ClassId(self.value[: -len("closed")] + "open")
        return ClassId(self.value[: -len("open")] + "closed")

    @classmethod
    def parse(cls, name: str) -> ClassId:
        try:
            return cls(name)
        except ValueError:
            valid = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown class {name!r}; valid classes: {valid}") from None


OPEN_CLASSES: tuple[ClassId, ...] = tuple(c for c in ClassId if not c.is_closed_class)
CLOSED_CLASSES: tuple[ClassId, ...] = tuple(c.dual for c in OPEN_CLASSES)

# Implications that follow from the definitions alone.
FORCED_IMPLICATIONS: tuple[tuple[ClassId, ClassId], ...] = (
    (ClassId.OPEN, ClassId.PRE_OPEN),
    (ClassId.OPEN, ClassId.SEMI_OPEN),
    (ClassId.DELTA_PRE_OPEN, ClassId.E_OPEN),
    (ClassId.DELTA_SEMI_OPEN, ClassId.E_OPEN),
    (ClassId.A_OPEN, ClassId.DELTA_SEMI_OPEN),
    (ClassId.PRE_OPEN, ClassId.BETA_OPEN),
)


def is_regular_open(s: InfraSpace, a: SubsetMask) -> bool:
    return a == sp.interior(s, sp.closure(s, a))


def regular_open_family(s: InfraSpace) -> SetFamily:
    return tuple(m for m in range(1 << s.n) if is_regular_open(s, m))


def delta_interior(s: InfraSpace, a: SubsetMask) -> SubsetMask:
    out = 0
    for r in regular_open_family(s):
        if r & ~a == 0:
            out |= r
    return out


def delta_closure(s: InfraSpace, a: SubsetMask, *, literal: bool = False) -> SubsetMask:
    out = s.full
    for r in regular_open_family(s):
        c = r if literal else s.full ^ r
        if a & ~c == 0:
            out &= c
    return out


def delta_frontier(s: InfraSpace, a: SubsetMask, *, literal: bool = False) -> SubsetMask:
    return delta_closure(s, a, literal=literal) & ~delta_interior(s, a)


def is_member(s: InfraSpace, c: ClassId, a: SubsetMask, *, literal: bool = False) -> bool:
    if c.is_closed_class:
        return is_member(s, c.dual, s.full ^ a, literal=literal)

    def inside(x: SubsetMask, y: SubsetMask) -> bool:
        return x & ~y == 0

    cl, it = sp.closure, sp.interior

    def dcl(x: SubsetMask) -> SubsetMask:
        return delta_closure(s, x, literal=literal)

    def dint(x: SubsetMask) -> SubsetMask:
        return delta_interior(s, x)

    if c is ClassId.OPEN:
        return s.is_open(a)
    if c is ClassId.REGULAR_OPEN:
        return is_regular_open(s, a)
    if c is ClassId.DELTA_OPEN:
        return a == dint(a)
    if c is ClassId.PRE_OPEN:
        return inside(a, it(s, cl(s, a)))
    if c is ClassId.SEMI_OPEN:
        return inside(a, cl(s, it(s, a)))
    if c is ClassId.DELTA_PRE_OPEN:
        return inside(a, it(s, dcl(a)))
    if c is ClassId.DELTA_SEMI_OPEN:
        return inside(a, cl(s, dint(a)))
    if c is ClassId.E_OPEN:
        return inside(a, cl(s, dint(a)) | it(s, dcl(a)))
    if c is ClassId.E_STAR_OPEN:
        return inside(a, cl(s, it(s, dcl(a))))
    if c is ClassId.A_OPEN:
        return inside(a, it(s, cl(s, dint(a))))
    if c is ClassId.BETA_OPEN:
        return inside(a, cl(s, it(s, cl(s, a))))
    raise AssertionError(c)


def family_of(s: InfraSpace, c: ClassId, *, literal: bool = False) -> SetFamily:
    return make_family(m for m in range(1 << s.n) if is_member(s, c, m, literal=literal))


def classify(s: InfraSpace, a: SubsetMask, *, literal: bool = False, duals: bool = False) -> list[ClassId]:
    """All classes containing ``a``, in declaration order."""
    pool = tuple(ClassId) if duals else OPEN_CLASSES
    return [c for c in pool if is_member(s, c, a, literal=literal)]


class SpaceTables:
    """Vectorized operator and membership tables for one space.

    Same values as the scalar functions above, computed for all 2^n subsets
    at once.  Per-class family operators are built on first access.
    """

    def __init__(self, s: InfraSpace, *, literal: bool = False) -> None:
        self.space = s
        self.literal = literal
        self.n = s.n
        self.full = s.full
        self.masks = np.arange(1 << s.n, dtype=np.int64)
        self.infra = operator_tables(s.n, s.opens)
        self._fam: dict[ClassId, OperatorTables] = {}

        it, cl = self.infra.interior, self.infra.closure
        masks, full = self.masks, self.full
        self.regular_open = it[cl[masks]] == masks
        ro = masks[self.regular_open]
        self.dint = operator_tables(s.n, ro).interior
        if literal:
            above = (masks[:, None] & ~ro[None, :]) == 0
            self.dcl = np.bitwise_and.reduce(np.where(above, ro[None, :], full), axis=1)
        else:
            self.dcl = operator_tables(s.n, ro).closure
        self.dfr = self.dcl & ~self.dint

        dint, dcl = self.dint, self.dcl

        def sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
            return (a & ~b) == 0

        member = {
            ClassId.OPEN: self.infra.is_open.copy(),
            ClassId.REGULAR_OPEN: self.regular_open,
            ClassId.DELTA_OPEN: dint == masks,
            ClassId.PRE_OPEN: sub(masks, it[cl]),
            ClassId.SEMI_OPEN: sub(masks, cl[it]),
            ClassId.DELTA_PRE_OPEN: sub(masks, it[dcl]),
            ClassId.DELTA_SEMI_OPEN: sub(masks, cl[dint]),
            ClassId.E_OPEN: sub(masks, cl[dint] | it[dcl]),
            ClassId.E_STAR_OPEN: sub(masks, cl[it[dcl]]),
            ClassId.A_OPEN: sub(masks, it[cl[dint]]),
            ClassId.BETA_OPEN: sub(masks, cl[it[cl]]),
        }
        for c in OPEN_CLASSES:
            member[c.dual] = member[c][full ^ masks]
        self.member = member

    def family(self, c: ClassId) -> SetFamily:
        return tuple(int(m) for m in self.masks[self.member[c]])

    def fam(self, c: ClassId) -> OperatorTables:
        """Operator tables with class ``c``'s family in the role of the opens."""
        tables = self._fam.get(c)
        if tables is None:
            tables = self._fam[c] = operator_tables(self.n, self.family(c))
        return tables

    @cached_property
    def is_closed(self) -> np.ndarray:
        return self.infra.is_open[self.full ^ self.masks]
