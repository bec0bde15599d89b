"""Exhaustive enumeration of infra topologies and empirical class implications.

A candidate family is a bit vector over the 2^n subsets (``encode_family``).
The pruned search decides the middle subsets in descending numeric order.
Deciding to include ``S`` makes every ``S & T`` (``T`` already included)
required; those meets are numerically smaller than ``S`` and therefore still
undecided, so a required subset is simply forced in when reached and the
search never dead-ends.  Trying "exclude" before "include" yields families
in ascending encoding order.

Sharding fixes the membership of the first ``k`` middle subsets; shard
``(i, total)`` owns the prefixes ``p`` with ``p % total == i``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .classes import ClassId, SpaceTables
from .setcore import GroundSet, SubsetMask, canonical_form, decode_family, encode_family, popcount
from .space import InfraSpace

MAX_N = 5


@dataclass(frozen=True)
class EnumConfig:
    n: int
    up_to_iso: bool = False
    count_only: bool = False
    shard: tuple[int, int] = (0, 1)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must be in 1..{MAX_N}, got {self.n}")
        index, total = self.shard
        if total < 1 or not 0 <= index < total:
            raise ValueError(f"invalid shard {self.shard}")


def _middles(n: int) -> list[int]:
    return list(range((1 << n) - 2, 0, -1))


def prefix_bits(n: int, total: int) -> int:
    """Number of leading decisions used to split work into ``total`` shards.

    Aims for about four prefixes per shard so uneven subtrees even out.
    """
    if total <= 1:
        return 0
    return min(len(_middles(n)), max(1, math.ceil(math.log2(4 * total))))


def _search(n: int, prefix: int, k: int) -> Iterator[int]:
    """Yield encodings of all infra topologies whose first ``k`` decisions spell ``prefix``.

    ``prefix`` is read most-significant-decision first, 1 meaning "include".
    """
    full = (1 << n) - 1
    order = _middles(n)
    depth_max = len(order)

    def forced(pos: int) -> int | None:
        if pos < k:
            return prefix >> (k - 1 - pos) & 1
        return None

    # stack of (pos, members, required, code)
    stack: list[tuple[int, tuple[int, ...], int, int]] = [(0, (full,), 0, 1 << full)]
    while stack:
        pos, members, required, code = stack.pop()
        if pos == depth_max:
            yield code | 1  # empty set always present
            continue
        s = order[pos]
        want = forced(pos)
        must = required >> s & 1
        if must and want == 0:
            continue
        include_ok = want != 0
        exclude_ok = not must and want != 1
        # push include first so exclude is explored first (ascending order)
        if include_ok:
            req = required
            for t in members:
                req |= 1 << (s & t)
            stack.append((pos + 1, members + (s,), req, code | 1 << s))
        if exclude_ok:
            stack.append((pos + 1, members, required, code))


def _count_search(n: int, prefix: int, k: int) -> int:
    full = (1 << n) - 1
    order = _middles(n)
    depth_max = len(order)

    def rec(pos: int, members: list[int], required: int) -> int:
        if pos == depth_max:
            return 1
        s = order[pos]
        want = prefix >> (k - 1 - pos) & 1 if pos < k else -1
        must = required >> s & 1
        total = 0
        if not must and want != 1:
            total += rec(pos + 1, members, required)
        if want != 0:
            req = required
            for t in members:
                req |= 1 << (s & t)
            members.append(s)
            total += rec(pos + 1, members, req)
            members.pop()
        return total

    return rec(0, [full], 0)


def _shard_prefixes(n: int, shard: tuple[int, int]) -> tuple[int, list[int]]:
    index, total = shard
    k = prefix_bits(n, total)
    return k, [p for p in range(1 << k) if p % total == index]


def enumerate_encodings(cfg: EnumConfig) -> Iterator[int]:
    """Encodings of the infra topologies selected by ``cfg``, ascending."""
    k, prefixes = _shard_prefixes(cfg.n, cfg.shard)
    g = GroundSet.of_size(cfg.n)
    for p in prefixes:
        for code in _search(cfg.n, p, k):
            if cfg.up_to_iso:
                fam = decode_family(code)
                if canonical_form(g, fam) != fam:
                    continue
            yield code


def enumerate_spaces(cfg: EnumConfig) -> Iterator[InfraSpace]:
    g = GroundSet.of_size(cfg.n)
    for code in enumerate_encodings(cfg):
        yield InfraSpace(g, decode_family(code))


def _count_prefix(args: tuple[int, int, int]) -> int:
    return _count_search(*args)


def count_spaces(n: int, *, jobs: int = 1, shard: tuple[int, int] = (0, 1), up_to_iso: bool = False) -> int:
    """Count labeled (or, for small n, isomorphism-class) infra topologies.

    With ``jobs > 1`` the selected prefixes are spread over worker processes;
    the result does not depend on ``jobs``.
    """
    cfg = EnumConfig(n, up_to_iso=up_to_iso, count_only=True, shard=shard)
    if up_to_iso:
        return sum(1 for _ in enumerate_encodings(cfg))
    k, prefixes = _shard_prefixes(n, shard)
    if jobs <= 1:
        return sum(_count_search(n, p, k) for p in prefixes)
    # refine the shard's prefixes so every worker gets several tasks
    k2 = max(k, prefix_bits(n, jobs * len(prefixes)))
    tasks = [(n, p << (k2 - k) | r, k2) for p in prefixes for r in range(1 << (k2 - k))]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_prefix, tasks, chunksize=1))


def naive_encodings(n: int, prefix: int = 0, k: int = 0) -> Iterator[int]:
    """Brute-force filter over all 2^(2^n - 2) candidate families.

    Shares nothing with the pruned search beyond the prefix convention, so it
    serves as an independent oracle.  ``prefix``/``k`` restrict the candidates
    to one shard (the membership of the ``k`` largest middle subsets).
    """
    full = (1 << n) - 1
    middles = list(range(1, full))
    top = middles[::-1][:k]
    rest = middles[::-1][k:]
    fixed = [0, full] + [s for i, s in enumerate(top) if prefix >> (k - 1 - i) & 1]
    for bits in range(1 << len(rest)):
        members = fixed + [s for i, s in enumerate(rest) if bits >> i & 1]
        present = set(members)
        if all((a & b) in present for i, a in enumerate(members) for b in members[i + 1:]):
            yield encode_family(members)


def universe(max_n: int, *, up_to_iso: bool = False) -> Iterator[InfraSpace]:
    """All spaces with 1 <= n <= max_n, by n then encoding."""
    for n in range(1, max_n + 1):
        yield from enumerate_spaces(EnumConfig(n, up_to_iso=up_to_iso))


# -- implication matrix ----------------------------------------------------

Witness = tuple[InfraSpace, SubsetMask]


def witness_key(space: InfraSpace, a: SubsetMask) -> tuple[int, int, int, int]:
    return (space.n, space.encoding, popcount(a), a)


@dataclass
class Cell:
    holds: bool = True
    counterexamples: int = 0
    witness: Witness | None = None

    def add(self, space: InfraSpace, a: SubsetMask) -> None:
        self.holds = False
        self.counterexamples += 1
        if self.witness is None or witness_key(space, a) < witness_key(*self.witness):
            self.witness = (space, a)

    def merge(self, other: Cell) -> None:
        self.counterexamples += other.counterexamples
        if other.witness is not None:
            self.holds = False
            if self.witness is None or witness_key(*other.witness) < witness_key(*self.witness):
                self.witness = other.witness


@dataclass
class ImplicationMatrix:
    classes: tuple[ClassId, ...]
    cells: dict[tuple[ClassId, ClassId], Cell] = field(default_factory=dict)
    spaces: int = 0

    def cell(self, c1: ClassId, c2: ClassId) -> Cell:
        return self.cells[(c1, c2)]

    def holds(self, c1: ClassId, c2: ClassId) -> bool:
        return self.cells[(c1, c2)].holds

    def to_json(self) -> dict:
        out = {"classes": [c.value for c in self.classes], "spaces": self.spaces, "cells": []}
        for c1 in self.classes:
            for c2 in self.classes:
                cell = self.cells[(c1, c2)]
                w = None
                if cell.witness is not None:
                    s, a = cell.witness
                    w = {
                        "ground": list(s.ground.elements),
                        "opens": [s.ground.names(o) for o in s.opens],
                        "subset": s.ground.names(a),
                    }
                out["cells"].append(
                    {"from": c1.value, "to": c2.value, "holds": cell.holds,
                     "counterexamples": cell.counterexamples, "witness": w}
                )
        return out


def _space_cells(space: InfraSpace, classes: Sequence[ClassId], literal: bool) -> dict[tuple[ClassId, ClassId], Cell]:
    t = SpaceTables(space, literal=literal)
    out = {}
    for c1 in classes:
        m1 = t.member[c1]
        for c2 in classes:
            bad = m1 & ~t.member[c2]
            cell = Cell()
            for a in t.masks[bad]:
                cell.add(space, int(a))
            out[(c1, c2)] = cell
    return out


def implication_matrix(
    spaces: Iterable[InfraSpace], classes: Sequence[ClassId], *, literal: bool = False
) -> ImplicationMatrix:
    classes = tuple(classes)
    matrix = ImplicationMatrix(classes, {(a, b): Cell() for a in classes for b in classes})
    for space in spaces:
        matrix.spaces += 1
        for key, cell in _space_cells(space, classes, literal).items():
            matrix.cells[key].merge(cell)
    if matrix.spaces == 0:
        raise ValueError("implication_matrix needs at least one space")
    return matrix


def counterexamples(
    spaces: Iterable[InfraSpace], source: ClassId, not_to: ClassId, *, literal: bool = False
) -> Iterator[Witness]:
    """Every (space, subset) in ``source`` but not in ``not_to``, in stream order."""
    for space in spaces:
        t = SpaceTables(space, literal=literal)
        bad = t.member[source] & ~t.member[not_to]
        for a in sorted((int(m) for m in t.masks[bad]), key=lambda m: (popcount(m), m)):
            yield space, a


def hunt(
    spaces: Iterable[InfraSpace], source: ClassId, not_to: ClassId, *, literal: bool = False
) -> Witness | None:
    """Minimal witness that ``source`` does not imply ``not_to``, or None."""
    if source == not_to:
        raise ValueError("hunt needs two different classes")
    best = None
    for w in counterexamples(spaces, source, not_to, literal=literal):
        if best is None or witness_key(*w) < witness_key(*best):
            best = w
    return best


def to_dot(matrix: ImplicationMatrix) -> str:
    """DOT digraph: an edge c1 -> c2 for every implication that holds.

    Edges whose converse fails carry the minimal converse counterexample as
    a label, which is what makes the inclusion strict.
    """
    lines = ["digraph implications {", "  rankdir=TB;"]
    for c in matrix.classes:
        lines.append(f'  "{c.value}";')
    for c1 in matrix.classes:
        for c2 in matrix.classes:
            if c1 == c2 or not matrix.holds(c1, c2):
                continue
            back = matrix.cell(c2, c1)
            if back.witness is None:
                lines.append(f'  "{c1.value}" -> "{c2.value}" [style=solid];')
            else:
                s, a = back.witness
                label = f"strict: {s.fmt(a)} in {s.describe()}"
                lines.append(f'  "{c1.value}" -> "{c2.value}" [style=solid, label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def default_jobs() -> int:
    return max(1, (os.cpu_count() or 1))
