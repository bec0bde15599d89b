"""Operators relative to an arbitrary family playing the role of "the opens".

Every class-specific cluster point, derived set, closure, interior, exterior
and boundary is the same construction with a different family plugged in,
so a single kernel covers all of them.  The scalar functions are the
reference path; :func:`operator_tables` computes the same values for all
2^n subsets at once with numpy, for the exhaustive checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .setcore import GroundSet, SetFamily, SubsetMask, make_family


@dataclass(frozen=True)
class FamilyView:
    ground: GroundSet
    opens_like: SetFamily

    def __post_init__(self) -> None:
        members = make_family(self.opens_like)
        object.__setattr__(self, "opens_like", members)
        if not members or members[0] != 0 or members[-1] != self.ground.full:
            raise ValueError("family must contain the empty set and X")

    @property
    def full(self) -> SubsetMask:
        return self.ground.full


def f_interior(v: FamilyView, a: SubsetMask) -> SubsetMask:
    out = 0
    for o in v.opens_like:
        if o & ~a == 0:
            out |= o
    return out


def f_closure(v: FamilyView, a: SubsetMask) -> SubsetMask:
    out = v.full
    for o in v.opens_like:
        c = v.full ^ o
        if a & ~c == 0:
            out &= c
    return out


def f_derived(v: FamilyView, a: SubsetMask) -> SubsetMask:
    out = 0
    for x in range(v.ground.n):
        bit = 1 << x
        if all(a & o & ~bit for o in v.opens_like if o & bit):
            out |= bit
    return out


def f_exterior(v: FamilyView, a: SubsetMask) -> SubsetMask:
    return f_interior(v, v.full ^ a)


def f_boundary(v: FamilyView, a: SubsetMask) -> SubsetMask:
    return v.full & ~(f_interior(v, a) | f_exterior(v, a))


@dataclass(frozen=True, eq=False)
class OperatorTables:
    """Operator values for every subset, indexed by mask.

    ``is_open[m]`` tells whether ``m`` is in the family itself.
    """

    interior: np.ndarray
    closure: np.ndarray
    derived: np.ndarray
    exterior: np.ndarray
    boundary: np.ndarray
    is_open: np.ndarray


def operator_tables(n: int, family: Iterable[SubsetMask]) -> OperatorTables:
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    fam = np.fromiter(family, dtype=np.int64)

    inside = (fam[None, :] & ~masks[:, None]) == 0
    interior = np.bitwise_or.reduce(np.where(inside, fam[None, :], 0), axis=1)

    closed = full ^ fam
    above = (masks[:, None] & ~closed[None, :]) == 0
    closure = np.bitwise_and.reduce(np.where(above, closed[None, :], full), axis=1)

    derived = np.zeros(1 << n, dtype=np.int64)
    for x in range(n):
        bit = 1 << x
        nbhd = (fam & bit) != 0
        misses = ((masks[:, None] & fam[None, :] & ~bit) == 0) & nbhd[None, :]
        derived |= np.where(misses.any(axis=1), 0, bit)

    exterior = interior[full ^ masks]
    boundary = full & ~(interior | exterior)
    is_open = np.zeros(1 << n, dtype=bool)
    is_open[fam] = True
    return OperatorTables(interior, closure, derived, exterior, boundary, is_open)
