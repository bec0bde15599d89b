"""Executable registry of the claims about infra spaces, plus an exhaustive checker.

Each entry is a predicate over a space and 0, 1 or 2 quantified subsets.  The
checker evaluates it on every tuple of subsets at once (numpy arrays of
masks) and reports the failing tuples, least first.

Expectations:

``FORCED``
    provable from the definitions as implemented; a failure is an engine bug
    and raises :class:`ForcedInvariantViolated`.
``CHECK``
    decided empirically.
``KNOWN-FAIL``
    false in general; carries a pinned, hand-verified counterexample.

Biconditionals appear three times: the full claim and its ``-fwd`` and
``-converse`` halves, so a half-true claim gets a precise verdict.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .classes import FORCED_IMPLICATIONS, ClassId, SpaceTables
from .genops import OperatorTables
from .setcore import GroundSet, SubsetMask, popcount
from .space import InfraSpace


class Expectation(str, enum.Enum):
    FORCED = "FORCED"
    CHECK = "CHECK"
    KNOWN_FAIL = "KNOWN-FAIL"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Pinned:
    """Hand-verified counterexample for a KNOWN-FAIL entry (element names)."""

    elements: tuple[str, ...]
    opens: tuple[tuple[str, ...], ...]
    witness: tuple[tuple[str, ...], ...]

    def space(self) -> InfraSpace:
        return InfraSpace.from_names(self.elements, self.opens)


@dataclass(frozen=True)
class TheoremEntry:
    id: str
    anchor: str
    arity: int
    expectation: Expectation
    predicate: Callable = field(repr=False, compare=False)
    uses_delta: bool = False
    # quantify over open sets but report their complements (claims about closed sets)
    complement_witness: bool = False
    pinned: Pinned | None = None

    def effective_expectation(self, literal: bool) -> Expectation:
        """Entries built on the delta-closure are only decided empirically under the literal reading."""
        if literal and self.uses_delta and self.expectation is Expectation.FORCED:
            return Expectation.CHECK
        return self.expectation


@dataclass(frozen=True)
class TheoremVerdict:
    theorem_id: str
    space: InfraSpace
    status: str
    witnesses: tuple[tuple[int, ...], ...]
    checked_count: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def named_witnesses(self) -> list[list[list[str]]]:
        g = self.space.ground
        return [[g.names(a) for a in w] for w in self.witnesses]

    def to_json(self) -> dict:
        g = self.space.ground
        return {
            "theorem": self.theorem_id,
            "space_opens": [g.names(o) for o in self.space.opens],
            "status": self.status,
            "witnesses": self.named_witnesses(),
            "checked": self.checked_count,
        }


class ForcedInvariantViolated(AssertionError):
    def __init__(self, verdict: TheoremVerdict) -> None:
        self.verdict = verdict
        s = verdict.space
        super().__init__(
            f"forced claim {verdict.theorem_id} fails on {s.describe()} over {list(s.ground.elements)}; "
            f"witnesses {verdict.named_witnesses()}"
        )


# -- predicate helpers ------------------------------------------------------

def sub(a, b):
    return (a & ~b) == 0


def imp(p, q):
    return np.logical_or(np.logical_not(p), q)


def conj(*ps):
    out = ps[0]
    for p in ps[1:]:
        out = np.logical_and(out, p)
    return out


def iff(p, q):
    return np.equal(np.asarray(p, dtype=bool), np.asarray(q, dtype=bool))


OpsOf = Callable[[SpaceTables], OperatorTables]


def _infra(t: SpaceTables) -> OperatorTables:
    return t.infra


def _fam(c: ClassId) -> OpsOf:
    return lambda t: t.fam(c)


# -- generic templates ------------------------------------------------------
# Each template yields (suffix, formula, arity, generic_forced, predicate).
# Formulas use {D} {C} {I} {E} {B} for derived set, closure, interior,
# exterior and boundary, {OS}/{CS} for the open / closed family names.

Template = tuple[str, str, int, bool, Callable]


def _derived_axioms(ops: OpsOf) -> list[Template]:
    def p3(t, A):
        d = ops(t).derived
        ok = True
        for x in range(t.n):
            bit = 1 << x
            ok = np.logical_and(ok, imp((d[A] & bit) != 0, (d[A & ~bit] & bit) != 0))
        return ok

    return [
        ("i", "{D}(∅) = ∅", 0, True, lambda t: ops(t).derived[0] == 0),
        ("ii", "A ⊆ B ⇒ {D}(A) ⊆ {D}(B)", 2, True,
         lambda t, A, B: imp(sub(A, B), sub(ops(t).derived[A], ops(t).derived[B]))),
        ("iii", "x ∈ {D}(A) ⇒ x ∈ {D}(A∖{{x}})", 1, True, p3),
        ("iv", "{D}(A ∩ B) ⊆ {D}(A) ∩ {D}(B)", 2, True,
         lambda t, A, B: sub(ops(t).derived[A & B], ops(t).derived[A] & ops(t).derived[B])),
        ("v", "{D}(A ∪ B) = {D}(A) ∪ {D}(B)", 2, False,
         lambda t, A, B: ops(t).derived[A | B] == (ops(t).derived[A] | ops(t).derived[B])),
    ]


def _closure_axioms(ops: OpsOf) -> list[Template]:
    def is_cs(t, A):
        return ops(t).is_open[t.full ^ A]

    return [
        ("i", "A is {CS} ⇔ A = {C}(A)", 1, False,
         lambda t, A: iff(is_cs(t, A), ops(t).closure[A] == A)),
        ("i-fwd", "A is {CS} ⇒ A = {C}(A)", 1, True,
         lambda t, A: imp(is_cs(t, A), ops(t).closure[A] == A)),
        ("i-converse", "A = {C}(A) ⇒ A is {CS}", 1, False,
         lambda t, A: imp(ops(t).closure[A] == A, is_cs(t, A))),
        ("ii", "{C}(∅) = ∅ and {C}(X) = X", 0, True,
         lambda t: (ops(t).closure[0] == 0) & (ops(t).closure[t.full] == t.full)),
        ("iii", "{C}({C}(A)) = {C}(A)", 1, True,
         lambda t, A: ops(t).closure[ops(t).closure[A]] == ops(t).closure[A]),
        ("iv", "A ⊆ B ⇒ {C}(A) ⊆ {C}(B)", 2, True,
         lambda t, A, B: imp(sub(A, B), sub(ops(t).closure[A], ops(t).closure[B]))),
        ("v", "{C}(A ∩ B) ⊆ {C}(A) ∩ {C}(B)", 2, True,
         lambda t, A, B: sub(ops(t).closure[A & B], ops(t).closure[A] & ops(t).closure[B])),
    ]


def _interior_axioms(ops: OpsOf) -> list[Template]:
    def is_os(t, A):
        return ops(t).is_open[A]

    return [
        ("i", "A is {OS} ⇔ A = {I}(A)", 1, False,
         lambda t, A: iff(is_os(t, A), ops(t).interior[A] == A)),
        ("i-fwd", "A is {OS} ⇒ A = {I}(A)", 1, True,
         lambda t, A: imp(is_os(t, A), ops(t).interior[A] == A)),
        ("i-converse", "A = {I}(A) ⇒ A is {OS}", 1, False,
         lambda t, A: imp(ops(t).interior[A] == A, is_os(t, A))),
        ("ii", "{I}(X) = X and {I}(∅) = ∅", 0, True,
         lambda t: (ops(t).interior[t.full] == t.full) & (ops(t).interior[0] == 0)),
        ("iii", "{I}({I}(A)) = {I}(A)", 1, True,
         lambda t, A: ops(t).interior[ops(t).interior[A]] == ops(t).interior[A]),
        ("iv", "A ⊆ B ⇒ {I}(A) ⊆ {I}(B)", 2, True,
         lambda t, A, B: imp(sub(A, B), sub(ops(t).interior[A], ops(t).interior[B]))),
        ("v", "{I}(A ∩ B) = {I}(A) ∩ {I}(B)", 2, False,
         lambda t, A, B: ops(t).interior[A & B] == (ops(t).interior[A] & ops(t).interior[B])),
    ]


def _exterior_axioms(ops: OpsOf) -> list[Template]:
    return [
        ("i", "{E}(X) = ∅ and {E}(∅) = X", 0, True,
         lambda t: (ops(t).exterior[t.full] == 0) & (ops(t).exterior[0] == t.full)),
        ("ii", "{E}(A) ⊆ Aᶜ", 1, True, lambda t, A: sub(ops(t).exterior[A], t.full ^ A)),
        ("iii", "{E}(A ∪ B) = {E}(A) ∩ {E}(B)", 2, False,
         lambda t, A, B: ops(t).exterior[A | B] == (ops(t).exterior[A] & ops(t).exterior[B])),
        ("iv", "A ⊆ B ⇒ {E}(B) ⊆ {E}(A)", 2, True,
         lambda t, A, B: imp(sub(A, B), sub(ops(t).exterior[B], ops(t).exterior[A]))),
        ("v", "{E}(A ∩ B) ⊆ {E}(A) ∪ {E}(B)", 2, False,
         lambda t, A, B: sub(ops(t).exterior[A & B], ops(t).exterior[A] | ops(t).exterior[B])),
    ]


def _boundary_axioms(ops: OpsOf) -> list[Template]:
    return [
        ("i", "{B}(X) = {B}(∅) = ∅", 0, True,
         lambda t: (ops(t).boundary[t.full] == 0) & (ops(t).boundary[0] == 0)),
        ("ii", "{B}(A ∩ B) = {B}(A) ∪ {B}(B)", 2, False,
         lambda t, A, B: ops(t).boundary[A & B] == (ops(t).boundary[A] | ops(t).boundary[B])),
    ]


def _relations(ops: OpsOf) -> list[Template]:
    def o(t):
        return ops(t)

    return [
        ("i", "A ⊆ {C}(A) ⇒ {D}(A) ⊆ {D}({C}(A))", 1, True,
         lambda t, A: imp(sub(A, o(t).closure[A]), sub(o(t).derived[A], o(t).derived[o(t).closure[A]]))),
        ("ii", "{I}(A) ⊆ A ⇒ {D}({I}(A)) ⊆ {D}(A)", 1, True,
         lambda t, A: imp(sub(o(t).interior[A], A), sub(o(t).derived[o(t).interior[A]], o(t).derived[A]))),
        ("iii", "A is ICS ⇒ {D}(A) ⊆ A", 1, False,
         lambda t, A: imp(t.is_closed[A], sub(o(t).derived[A], A))),
        ("iv", "{C}(A) = A ∪ {D}(A)", 1, True, lambda t, A: o(t).closure[A] == (A | o(t).derived[A])),
        ("v", "{B}(A) = {C}(A) ∖ {I}(A)", 1, True,
         lambda t, A: o(t).boundary[A] == (o(t).closure[A] & ~o(t).interior[A])),
        ("vi", "{C}(A) = {B}(A) ∪ {I}(A)", 1, True,
         lambda t, A: o(t).closure[A] == (o(t).boundary[A] | o(t).interior[A])),
        ("vii", "{B}(A) ⊆ {C}(A)", 1, True, lambda t, A: sub(o(t).boundary[A], o(t).closure[A])),
        ("viii", "{I}(A) ∩ {B}(A) = ∅", 1, True, lambda t, A: (o(t).interior[A] & o(t).boundary[A]) == 0),
    ]


# -- pinned counterexamples ------------------------------------------------

EX41 = (("a", "b", "c", "d"), ((), ("a", "b", "c", "d"), ("a",), ("b",), ("a", "c")))
EX42 = (("a", "b", "c", "d"), ((), ("a", "b", "c", "d"), ("b",), ("c",), ("b", "c", "d")))
S3 = (("a", "b", "c"), ((), ("a", "b", "c"), ("a",), ("b",)))
INDISCRETE2 = (("a", "b"), ((), ("a", "b")))


def _pin(space: tuple, *witness: tuple[str, ...]) -> Pinned:
    return Pinned(space[0], space[1], tuple(witness))


SECTION2_PINS = {
    "T2.16.i": _pin(S3, ("c",)),
    "T2.16.i-converse": _pin(S3, ("c",)),
    "T2.17.i": _pin(S3, ("a", "b")),
    "T2.17.i-converse": _pin(S3, ("a", "b")),
    "T2.18.v": _pin(INDISCRETE2, ("a",), ("b",)),
    "T2.19.ii": _pin(EX41, ("a",), ("b",)),
}


# -- registry ---------------------------------------------------------------

_INFRA_NAMES = {"D": "IDS", "C": "I.CL", "I": "I.INT", "E": "IEP", "B": "IBP", "OS": "IOS", "CS": "ICS"}


def _class_names(tag: str) -> dict[str, str]:
    return {"D": f"I.{tag}DS", "C": f"I.{tag}CL", "I": f"I.{tag}INT", "E": f"I.{tag}EP",
            "B": f"I.{tag}B", "OS": f"I.{tag}OS", "CS": f"I.{tag}CS"}


_GENERIC_CLASSES = ((ClassId.E_OPEN, "e"), (ClassId.E_STAR_OPEN, "e*"), (ClassId.A_OPEN, "a"))


def _entry(id_, anchor, arity, expectation, predicate, **kw) -> TheoremEntry:
    return TheoremEntry(id_, anchor, arity, expectation, predicate, **kw)


def _section2() -> list[TheoremEntry]:
    out = []
    groups = [
        (15, _derived_axioms), (16, _closure_axioms), (17, _interior_axioms),
        (18, _exterior_axioms), (19, _boundary_axioms), (20, _relations),
    ]
    for num, template in groups:
        for suffix, formula, arity, _generic, pred in template(_infra):
            tid = f"T2.{num}.{suffix}"
            pin = SECTION2_PINS.get(tid)
            exp = Expectation.KNOWN_FAIL if pin else Expectation.FORCED
            item = suffix.split("-")[0]
            anchor = f"Thm 2.{num}({item}): " + formula.format(**_INFRA_NAMES)
            out.append(_entry(tid, anchor, arity, exp, pred, pinned=pin))
            if tid == "T2.18.v":
                out.append(_entry(
                    "T2.18.v-reversed", "Thm 2.18(v), inclusion reversed: IEP(A) ∪ IEP(B) ⊆ IEP(A ∩ B)",
                    2, Expectation.FORCED,
                    lambda t, A, B: sub(t.infra.exterior[A] | t.infra.exterior[B], t.infra.exterior[A & B]),
                ))

    out.append(_entry(
        "T-ICS-INT.i", "Thm 3.1(i) (also stated in the preliminaries): ∅ and X are ICS", 0,
        Expectation.FORCED, lambda t: t.is_closed[0] & t.is_closed[t.full],
    ))
    out.append(_entry(
        "T-ICS-INT", "Thm 3.1(ii) (also stated in the preliminaries): C₁, C₂ ICS ⇒ C₁ ∩ C₂ ICS", 2,
        Expectation.KNOWN_FAIL,
        lambda t, O1, O2: imp(t.infra.is_open[O1] & t.infra.is_open[O2],
                              t.is_closed[(t.full ^ O1) & (t.full ^ O2)]),
        complement_witness=True,
        pinned=_pin(S3, ("b", "c"), ("a", "c")),
    ))
    return out


def _section3_generic() -> list[TheoremEntry]:
    out = []
    groups = [
        (2, "derived-set axioms", _derived_axioms),
        (5, "closure axioms", _closure_axioms),
        (8, "interior axioms", _interior_axioms),
        (11, "exterior axioms", _exterior_axioms),
        (14, "boundary axioms", _boundary_axioms),
        (17, "relations", _relations),
    ]
    for base, _label, template in groups:
        for offset, (cls, tag) in enumerate(_GENERIC_CLASSES):
            num = base + offset
            names = _class_names(tag)
            for suffix, formula, arity, generic, pred in template(_fam(cls)):
                exp = Expectation.FORCED if generic else Expectation.CHECK
                item = suffix.split("-")[0]
                anchor = f"Thm 3.{num}({item}): " + formula.format(**names)
                out.append(_entry(f"T3.{num}.{suffix}", anchor, arity, exp, pred, uses_delta=True))
    return out


def _bicond(id_, anchor, lhs, rhs, exp_fwd=Expectation.CHECK, exp_conv=Expectation.CHECK):
    """Full biconditional plus its two halves; ``lhs``/``rhs`` map (t, A) to bool arrays."""
    if Expectation.KNOWN_FAIL in (exp_fwd, exp_conv):
        exp_full = Expectation.KNOWN_FAIL
    elif Expectation.CHECK in (exp_fwd, exp_conv):
        exp_full = Expectation.CHECK
    else:
        exp_full = Expectation.FORCED
    return [
        _entry(id_, anchor, 1, exp_full, lambda t, A: iff(lhs(t, A), rhs(t, A)), uses_delta=True),
        _entry(id_ + "-fwd", anchor + " (⇒)", 1, exp_fwd, lambda t, A: imp(lhs(t, A), rhs(t, A)), uses_delta=True),
        _entry(id_ + "-converse", anchor + " (⇐)", 1, exp_conv, lambda t, A: imp(rhs(t, A), lhs(t, A)),
               uses_delta=True),
    ]


def _section3_characterizations() -> list[TheoremEntry]:
    C = ClassId
    CHECK, FORCED = Expectation.CHECK, Expectation.FORCED

    def m(c):
        return lambda t: t.member[c]

    def f(c):
        return lambda t: t.fam(c)

    e, es, dpre, dsemi = f(C.E_OPEN), f(C.E_STAR_OPEN), f(C.DELTA_PRE_OPEN), f(C.DELTA_SEMI_OPEN)

    def cl_dint(t, A):
        return t.infra.closure[t.dint[A]]

    def int_dcl(t, A):
        return t.infra.interior[t.dcl[A]]

    out = [
        _entry("L-δP-δS.i", "Thm l1(i): I.δPCL(A) ⊇ A ∪ I.CL(I.INT_δ(A)) and I.δPINT(A) ⊆ A ∩ I.INT(I.CL_δ(A))",
               1, FORCED, lambda t, A: conj(sub(A | cl_dint(t, A), dpre(t).closure[A]),
                                           sub(dpre(t).interior[A], A & int_dcl(t, A))), uses_delta=True),
        _entry("L-δP-δS.ii", "Thm l1(ii): I.δSCL(A) ⊇ A ∪ I.INT(I.CL_δ(A)) and I.δSINT(A) ⊆ A ∩ I.CL(I.INT_δ(A))",
               1, FORCED, lambda t, A: conj(sub(A | int_dcl(t, A), dsemi(t).closure[A]),
                                           sub(dsemi(t).interior[A], A & cl_dint(t, A))), uses_delta=True),
        _entry("P-E1.i", "Prop (e-open conditions)(i): A I.eOS and I.INT_δ(A) = ∅ ⇒ A I.δPOS", 1, FORCED,
               lambda t, A: imp(m(C.E_OPEN)(t)[A] & (t.dint[A] == 0), m(C.DELTA_PRE_OPEN)(t)[A]), uses_delta=True),
        _entry("P-E1.ii", "Prop (e-open conditions)(ii): A I.eOS and I.CL_δ(A) = ∅ ⇒ A I.δSOS", 1, CHECK,
               lambda t, A: imp(m(C.E_OPEN)(t)[A] & (t.dcl[A] == 0), m(C.DELTA_SEMI_OPEN)(t)[A]), uses_delta=True),
        _entry("P-E1.iii", "Prop (e-open conditions)(iii): A I.eOS and I.δCS ⇒ A I.δSOS", 1, CHECK,
               lambda t, A: imp(m(C.E_OPEN)(t)[A] & m(C.DELTA_CLOSED)(t)[A], m(C.DELTA_SEMI_OPEN)(t)[A]),
               uses_delta=True),
        _entry("P-E1.iv", "Prop (e-open conditions)(iv): A I.δSOS and I.δCS ⇒ A I.eOS", 1, CHECK,
               lambda t, A: imp(m(C.DELTA_SEMI_OPEN)(t)[A] & m(C.DELTA_CLOSED)(t)[A], m(C.E_OPEN)(t)[A]),
               uses_delta=True),
    ]
    out += _bicond(
        "TH-ECHAR", "Thm (e-open characterization): A I.eOS ⇔ A = I.δPINT(A) ∪ I.δSINT(A)",
        lambda t, A: t.member[C.E_OPEN][A],
        lambda t, A: A == (dpre(t).interior[A] | dsemi(t).interior[A]),
    )
    out += [
        _entry("P-ECL-COMPL.i", "Prop (e-closure algebra)(i): I.eCL(Aᶜ) = I.eINT(A)ᶜ and I.eINT(Aᶜ) = I.eCL(A)ᶜ",
               1, CHECK, lambda t, A: conj(e(t).closure[t.full ^ A] == (t.full ^ e(t).interior[A]),
                                           e(t).interior[t.full ^ A] == (t.full ^ e(t).closure[A])),
               uses_delta=True),
        _entry("P-ECL-COMPL.ii", "Prop (e-closure algebra)(ii): I.eCL(A ∪ B) ⊇ I.eCL(A) ∪ I.eCL(B), "
               "I.eINT(A ∪ B) ⊇ I.eINT(A) ∪ I.eINT(B)", 2, CHECK,
               lambda t, A, B: conj(sub(e(t).closure[A] | e(t).closure[B], e(t).closure[A | B]),
                                    sub(e(t).interior[A] | e(t).interior[B], e(t).interior[A | B])),
               uses_delta=True),
        _entry("P-ECL-COMPL.iii", "Prop (e-closure algebra)(iii): I.eCL(A ∩ B) ⊆ I.eCL(A) ∩ I.eCL(B), "
               "I.eINT(A ∩ B) ⊆ I.eINT(A) ∩ I.eINT(B)", 2, CHECK,
               lambda t, A, B: conj(sub(e(t).closure[A & B], e(t).closure[A] & e(t).closure[B]),
                                    sub(e(t).interior[A & B], e(t).interior[A] & e(t).interior[B])),
               uses_delta=True),
        _entry("P-ECL-BOUND.i", "Prop p1(i): I.eCL(A) ⊇ I.CL(I.INT_δ(A)) ∩ I.INT(I.CL_δ(A))", 1, CHECK,
               lambda t, A: sub(cl_dint(t, A) & int_dcl(t, A), e(t).closure[A]), uses_delta=True),
        _entry("P-ECL-BOUND.ii", "Prop p1(ii): I.eINT(A) ⊆ I.CL(I.INT_δ(A)) ∪ I.INT(I.CL_δ(A))", 1, CHECK,
               lambda t, A: sub(e(t).interior[A], cl_dint(t, A) | int_dcl(t, A)), uses_delta=True),
        _entry("TH-ECL-MEET", "Thm (e-closure meet): I.eCL(A) = I.δPCL(A) ∩ I.δSCL(A)", 1, CHECK,
               lambda t, A: e(t).closure[A] == (dpre(t).closure[A] & dsemi(t).closure[A]), uses_delta=True),
        _entry("L-δS-ID.1", "Lemma (δ-semi identities)(1): I.δSINT(A) = A ∩ I.CL(I.INT_δ(A)) and "
               "I.δSCL(A) = A ∪ I.INT(I.CL_δ(A))", 1, CHECK,
               lambda t, A: conj(dsemi(t).interior[A] == (A & cl_dint(t, A)),
                                 dsemi(t).closure[A] == (A | int_dcl(t, A))), uses_delta=True),
        _entry("L-δS-ID.2", "Lemma (δ-semi identities)(2): I.δPCL(A) = A ∪ I.CL(I.INT_δ(A))", 1, CHECK,
               lambda t, A: dpre(t).closure[A] == (A | cl_dint(t, A)), uses_delta=True),
        _entry("L-δS-ID.3", "Lemma (δ-semi identities)(3): I.δSCL(I.δSINT(A)) = I.δSINT(A) ∪ I.INT(I.CL(I.INT_δ(A))) "
               "and I.δSINT(I.δSCL(A)) = I.δSCL(A) ∩ I.CL(I.INT(I.CL_δ(A)))", 1, CHECK,
               lambda t, A: conj(
                   dsemi(t).closure[dsemi(t).interior[A]]
                   == (dsemi(t).interior[A] | t.infra.interior[cl_dint(t, A)]),
                   dsemi(t).interior[dsemi(t).closure[A]]
                   == (dsemi(t).closure[A] & t.infra.closure[int_dcl(t, A)])),
               uses_delta=True),
        _entry("L-δS-ID.4", "Lemma (δ-semi identities)(4): I.CL_δ(I.δSINT(A)) = I.CL(I.INT_δ(A))", 1, CHECK,
               lambda t, A: t.dcl[dsemi(t).interior[A]] == cl_dint(t, A), uses_delta=True),
        _entry("L-δS-ID.5", "Lemma (δ-semi identities)(5): I.δSCL(I.INT_δ(A)) = I.INT(I.CL(I.INT_δ(A)))", 1, CHECK,
               lambda t, A: dsemi(t).closure[t.dint[A]] == t.infra.interior[cl_dint(t, A)], uses_delta=True),
        _entry("L-ESTAR.1", "Lemma (e*-closure)(1), as printed: I.e*CL(A) is I.e*OS", 1, CHECK,
               lambda t, A: t.member[C.E_STAR_OPEN][es(t).closure[A]], uses_delta=True),
        _entry("L-ESTAR.1-corrected", "Lemma (e*-closure)(1), read as closed: I.e*CL(A) is I.e*CS", 1, CHECK,
               lambda t, A: t.member[C.E_STAR_CLOSED][es(t).closure[A]], uses_delta=True),
        _entry("L-ESTAR.2", "Lemma (e*-closure)(2): X ∖ I.e*CL(A) = I.e*INT(X ∖ A)", 1, CHECK,
               lambda t, A: (t.full ^ es(t).closure[A]) == es(t).interior[t.full ^ A], uses_delta=True),
    ]
    out += _bicond(
        "TH-ESTAR.i", "Thm (e*-characterization)(i): A I.e*OS ⇔ A = A ∩ I.CL(I.INT(I.CL_δ(A)))",
        lambda t, A: t.member[C.E_STAR_OPEN][A],
        lambda t, A: A == (A & t.infra.closure[int_dcl(t, A)]),
    )
    out += _bicond(
        "TH-ESTAR.ii", "Thm (e*-characterization)(ii): A I.e*CS ⇔ A = A ∪ I.INT(I.CL(I.INT_δ(A)))",
        lambda t, A: t.member[C.E_STAR_CLOSED][A],
        lambda t, A: A == (A | t.infra.interior[cl_dint(t, A)]),
    )
    out += [
        _entry("TH-ESTAR.iii", "Thm (e*-characterization)(iii): I.e*CL(A) = A ∪ I.INT(I.CL(I.INT_δ(A)))", 1, CHECK,
               lambda t, A: es(t).closure[A] == (A | t.infra.interior[cl_dint(t, A)]), uses_delta=True),
        _entry("TH-ESTAR.iv", "Thm (e*-characterization)(iv): I.e*INT(A) = A ∩ I.CL(I.INT(I.CL_δ(A)))", 1, CHECK,
               lambda t, A: es(t).interior[A] == (A & t.infra.closure[int_dcl(t, A)]), uses_delta=True),
    ]

    def ros(t, A):
        return t.member[C.REGULAR_OPEN][A]

    def ros_ii(t, A):
        return t.member[C.A_OPEN][A] & t.member[C.E_STAR_CLOSED][A]

    def ros_iii(t, A):
        return t.member[C.DELTA_PRE_OPEN][A] & t.member[C.DELTA_SEMI_CLOSED][A]

    anchor = "Thm (regular-open equivalence): I.ROS ⇔ I.aOS ∧ I.e*CS ⇔ I.δPOS ∧ I.δSCS"
    out += [
        _entry("TH-ROS-EQ", anchor, 1, CHECK,
               lambda t, A: conj(iff(ros(t, A), ros_ii(t, A)), iff(ros(t, A), ros_iii(t, A))), uses_delta=True),
        _entry("TH-ROS-EQ.i->ii", anchor + " [(i) ⇒ (ii)]", 1, CHECK,
               lambda t, A: imp(ros(t, A), ros_ii(t, A)), uses_delta=True),
        _entry("TH-ROS-EQ.ii->i", anchor + " [(ii) ⇒ (i)]", 1, CHECK,
               lambda t, A: imp(ros_ii(t, A), ros(t, A)), uses_delta=True),
        _entry("TH-ROS-EQ.i->iii", anchor + " [(i) ⇒ (iii)]", 1, CHECK,
               lambda t, A: imp(ros(t, A), ros_iii(t, A)), uses_delta=True),
        _entry("TH-ROS-EQ.iii->i", anchor + " [(iii) ⇒ (i)]", 1, CHECK,
               lambda t, A: imp(ros_iii(t, A), ros(t, A)), uses_delta=True),
    ]
    out += _bicond(
        "TH-δSOS-ESTAR", "Thm (δ-semi-open characterization): A I.δSOS ⇔ A I.e*OS ∧ I.INT_δ(I.δFR(A)) = ∅",
        lambda t, A: t.member[C.DELTA_SEMI_OPEN][A],
        lambda t, A: t.member[C.E_STAR_OPEN][A] & (t.dint[t.dfr[A]] == 0),
    )
    out.append(_entry(
        "TH-AO-MEET", "Thm (a-open meet): I.aO(X) = I.δSOS(X) ∩ I.δPOS(X)", 0, CHECK,
        lambda t: np.array_equal(t.member[C.A_OPEN], t.member[C.DELTA_SEMI_OPEN] & t.member[C.DELTA_PRE_OPEN]),
        uses_delta=True,
    ))
    return out


def _implications() -> list[TheoremEntry]:
    out = []
    plain = {ClassId.OPEN, ClassId.PRE_OPEN, ClassId.SEMI_OPEN, ClassId.BETA_OPEN}
    for c1, c2 in FORCED_IMPLICATIONS:
        out.append(_entry(
            f"IMP.{c1.value}->{c2.value}", f"Def 3.3: every {c1.value} set is {c2.value}", 1, Expectation.FORCED,
            lambda t, A, c1=c1, c2=c2: imp(t.member[c1][A], t.member[c2][A]),
            uses_delta=not {c1, c2} <= plain,
        ))
    return out


@lru_cache(maxsize=None)
def _registry() -> tuple[TheoremEntry, ...]:
    entries = _section2() + _section3_generic() + _section3_characterizations() + _implications()
    ids = [e.id for e in entries]
    assert len(ids) == len(set(ids)), "duplicate theorem ids"
    return tuple(entries)


def registry() -> list[TheoremEntry]:
    return list(_registry())


@lru_cache(maxsize=None)
def _by_id() -> dict[str, TheoremEntry]:
    return {e.id: e for e in _registry()}


def normalize_id(theorem_id: str) -> str:
    """Accept ``delta`` as an ASCII spelling of ``δ`` in theorem ids."""
    if theorem_id in _by_id():
        return theorem_id
    return theorem_id.replace("delta", "δ")


def get_entry(theorem_id: str) -> TheoremEntry:
    found = _by_id().get(normalize_id(theorem_id))
    if found is not None:
        return found
    raise KeyError(f"unknown theorem id {theorem_id!r}; valid ids: {', '.join(e.id for e in _registry())}")


# -- checking -----------------------------------------------------------------

def _witness_key(full: int, tup: tuple[int, ...]) -> tuple:
    # instances built from the empty set or X are trivial; prefer the rest
    trivial = sum(1 for a in tup if a in (0, full))
    return (trivial, sum(popcount(a) for a in tup), tup)


def check(
    s: InfraSpace, t: TheoremEntry, *, literal: bool = False, tables: SpaceTables | None = None
) -> TheoremVerdict:
    """Evaluate ``t`` on every tuple of subsets of ``s``.

    Witnesses are sorted least first: fewest components equal to the empty
    set or X, then smallest total size, then numerically.
    """
    if tables is None:
        tables = SpaceTables(s, literal=literal)
    size = 1 << s.n
    masks = tables.masks
    if t.arity == 0:
        args: tuple[np.ndarray, ...] = ()
    elif t.arity == 1:
        args = (masks,)
    elif t.arity == 2:
        args = (np.repeat(masks, size), np.tile(masks, size))
    else:
        raise ValueError(f"unsupported arity {t.arity}")
    count = size ** t.arity
    result = np.broadcast_to(np.asarray(t.predicate(tables, *args), dtype=bool), (count,))
    failing = np.flatnonzero(~result)
    tuples = [tuple(int(a[i]) for a in args) for i in failing]
    tuples.sort(key=lambda tup: _witness_key(s.full, tup))
    if t.complement_witness:
        tuples = [tuple(s.full ^ a for a in tup) for tup in tuples]
    return TheoremVerdict(t.id, s, "fail" if tuples else "pass", tuple(tuples), count)


@dataclass
class TheoremSummary:
    entry: TheoremEntry
    expectation: Expectation
    spaces_checked: int = 0
    spaces_passed: int = 0
    spaces_failed: int = 0
    first_failure: TheoremVerdict | None = None

    @property
    def expectation_met(self) -> bool:
        if self.expectation is Expectation.FORCED:
            return self.spaces_failed == 0
        if self.expectation is Expectation.KNOWN_FAIL:
            return self.spaces_failed > 0
        return True

    def to_json(self) -> dict:
        first = None
        if self.first_failure is not None:
            v = self.first_failure
            first = {"space_opens": [v.space.ground.names(o) for o in v.space.opens],
                     "ground": list(v.space.ground.elements),
                     "witness": v.named_witnesses()[0]}
        return {
            "theorem": self.entry.id,
            "expectation": self.expectation.value,
            "spaces": self.spaces_checked,
            "passed": self.spaces_passed,
            "failed": self.spaces_failed,
            "expectation_met": self.expectation_met,
            "first_failure": first,
        }


@dataclass
class CheckReport:
    summaries: list[TheoremSummary]
    spaces: int = 0
    verdicts: list[TheoremVerdict] | None = None

    def summary(self, theorem_id: str) -> TheoremSummary:
        want = normalize_id(theorem_id)
        for s in self.summaries:
            if s.entry.id == want:
                return s
        raise KeyError(theorem_id)

    def table(self) -> str:
        width = max((len(s.entry.id) for s in self.summaries), default=10)
        lines = [f"{'theorem':<{width}}  {'expect':<10}  {'pass':>6}  {'fail':>6}  first witness"]
        for s in self.summaries:
            w = ""
            if s.first_failure is not None:
                v = s.first_failure
                w = " ".join(v.space.fmt(a) for a in v.witnesses[0]) or "(family-level)"
                w += f"  in {v.space.describe()}"
            flag = "" if s.expectation_met else "  [expectation not met]"
            lines.append(f"{s.entry.id:<{width}}  {s.expectation.value:<10}  {s.spaces_passed:>6}  "
                         f"{s.spaces_failed:>6}  {w}{flag}")
        return "\n".join(lines)


def _check_space(args: tuple[InfraSpace, tuple[str, ...], bool]) -> list[TheoremVerdict]:
    s, ids, literal = args
    tables = SpaceTables(s, literal=literal)
    return [check(s, get_entry(i), literal=literal, tables=tables) for i in ids]


def iter_verdicts(
    spaces: Iterable[InfraSpace],
    entries: Sequence[TheoremEntry] | None = None,
    *,
    literal: bool = False,
    jobs: int = 1,
) -> Iterator[TheoremVerdict]:
    """Verdicts in (space stream order, registry order), whatever ``jobs`` is."""
    entries = list(entries) if entries is not None else registry()
    ids = tuple(e.id for e in entries)
    if jobs <= 1:
        for s in spaces:
            tables = SpaceTables(s, literal=literal)
            for e in entries:
                yield check(s, e, literal=literal, tables=tables)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for batch in pool.map(_check_space, ((s, ids, literal) for s in spaces), chunksize=16):
            yield from batch


def check_all(
    spaces: Iterable[InfraSpace],
    entries: Sequence[TheoremEntry] | None = None,
    *,
    literal: bool = False,
    jobs: int = 1,
    keep_verdicts: bool = False,
    raise_on_forced: bool = True,
) -> CheckReport:
    """Aggregate verdicts over a stream of spaces.

    A FORCED entry failing anywhere raises :class:`ForcedInvariantViolated`
    (unless ``raise_on_forced`` is false, in which case it is only reported).
    """
    entries = list(entries) if entries is not None else registry()
    summaries = {e.id: TheoremSummary(e, e.effective_expectation(literal)) for e in entries}
    report = CheckReport(list(summaries.values()), verdicts=[] if keep_verdicts else None)
    for v in iter_verdicts(spaces, entries, literal=literal, jobs=jobs):
        summary = summaries[v.theorem_id]
        summary.spaces_checked += 1
        if v.passed:
            summary.spaces_passed += 1
        else:
            summary.spaces_failed += 1
            if summary.first_failure is None:
                summary.first_failure = v
            if summary.expectation is Expectation.FORCED and raise_on_forced:
                raise ForcedInvariantViolated(v)
        if report.verdicts is not None:
            report.verdicts.append(v)
    report.spaces = summaries[entries[0].id].spaces_checked if entries else 0
    return report


# -- cross reference ----------------------------------------------------------

@dataclass(frozen=True)
class XRef:
    item: str
    kind: str  # definition | theorem | lemma | proposition | remark
    ids: tuple[str, ...] = ()
    note: str = ""


def _ids(prefix: str) -> tuple[str, ...]:
    return tuple(e.id for e in _registry() if e.id == prefix or e.id.startswith(prefix + "."))


def _class_ids(start: int) -> tuple[str, ...]:
    return _ids(f"T3.{start}") + _ids(f"T3.{start + 1}") + _ids(f"T3.{start + 2}")


def cross_reference() -> list[XRef]:
    """Every numbered item of the preliminaries and the main section, in order of appearance."""
    d, t, lem, prop, rmk = "definition", "theorem", "lemma", "proposition", "remark"
    return [
        XRef("Def 2.1", d, note="infra topology axioms; implemented by space.validate"),
        XRef("Def 2.2", d, note="infra open set; InfraSpace.is_open"),
        XRef("Def 2.3", d, note="infra closed set; space.closed_sets / InfraSpace.is_closed"),
        XRef("Thm 2.4", t, note="out of scope as a per-space claim: any topology passes space.validate "
                                "(covered by test_space topology round-trip)"),
        XRef("Thm 2.5", t, note="∅, X open and meet-closure are exactly what space.validate enforces"),
        XRef("Thm 2.6", t, note="out of scope as a per-space claim (compares two infra topologies); "
                                "covered by test_enumeration intersection/union test"),
        XRef("Def 2.7", d, note="infra cluster point; space.derived_set"),
        XRef("Def 2.8", d, note="infra derived set; space.derived_set"),
        XRef("Thm (closed sets, preliminaries)", t, ids=("T-ICS-INT.i", "T-ICS-INT")),
        XRef("Def 2.9", d, note="infra closure; space.closure"),
        XRef("Rmk 2.10", rmk, ids=("T2.16.i-converse",), note="'I.CL(A) is the smallest ICS' is the converse claim"),
        XRef("Def 2.11", d, note="infra interior; space.interior"),
        XRef("Rmk 2.12", rmk, ids=("T2.17.i-converse",)),
        XRef("Def 2.13", d, note="infra exterior; space.exterior"),
        XRef("Def 2.14", d, note="infra boundary; space.boundary"),
        XRef("Thm 2.15", t, ids=_ids("T2.15")),
        XRef("Thm 2.16", t, ids=_ids("T2.16")),
        XRef("Thm 2.17", t, ids=_ids("T2.17")),
        XRef("Thm 2.18", t, ids=_ids("T2.18")),
        XRef("Thm 2.19", t, ids=_ids("T2.19")),
        XRef("Thm 2.20", t, ids=_ids("T2.20")),
        XRef("Def 3.1", d, note="δ-interior; classes.delta_interior"),
        XRef("Def 3.2", d, note="δ-closure; classes.delta_closure (literal reading via literal=True)"),
        XRef("Def 3.3", d, ids=tuple(e.id for e in _registry() if e.id.startswith("IMP.")),
             note="the class definitions; classes.is_member"),
        XRef("Def 3.4", d, note="closed duals; ClassId.dual / classes.is_member"),
        XRef("Def 3.5", d, note="class cluster points; genops.f_derived"),
        XRef("Def 3.6", d, note="class derived sets; genops.f_derived"),
        XRef("Thm 3.1", t, ids=("T-ICS-INT.i", "T-ICS-INT")),
        XRef("Def 3.7", d, note="class closures; genops.f_closure"),
        XRef("Def 3.8", d, note="class interiors; genops.f_interior"),
        XRef("Def 3.9", d, note="class exteriors; genops.f_exterior"),
        XRef("Def 3.10", d, note="class boundaries; genops.f_boundary"),
        *[XRef(f"Thm 3.{k}", t, ids=_ids(f"T3.{k}")) for k in range(2, 20)],
        XRef("Thm l1", t, ids=_ids("L-δP-δS")),
        XRef("Prop (e-open conditions)", prop, ids=_ids("P-E1")),
        XRef("Thm (e-open characterization)", t, ids=tuple(e.id for e in _registry() if e.id.startswith("TH-ECHAR"))),
        XRef("Prop (e-closure algebra)", prop, ids=_ids("P-ECL-COMPL")),
        XRef("Prop p1", prop, ids=_ids("P-ECL-BOUND")),
        XRef("Thm (e-closure meet)", t, ids=("TH-ECL-MEET",)),
        XRef("Lemma (δ-semi identities)", lem, ids=_ids("L-δS-ID")),
        XRef("Lemma (e*-closure)", lem, ids=tuple(e.id for e in _registry() if e.id.startswith("L-ESTAR"))),
        XRef("Thm (e*-characterization)", t, ids=tuple(e.id for e in _registry() if e.id.startswith("TH-ESTAR"))),
        XRef("Thm (regular-open equivalence)", t, ids=tuple(e.id for e in _registry() if e.id.startswith("TH-ROS-EQ"))),
        XRef("Thm (δ-semi-open characterization)", t,
             ids=tuple(e.id for e in _registry() if e.id.startswith("TH-δSOS-ESTAR"))),
        XRef("Thm (a-open meet)", t, ids=("TH-AO-MEET",)),
    ]


def default_ground(n: int) -> GroundSet:
    return GroundSet.of_size(n)


__all__ = [
    "Expectation", "TheoremEntry", "TheoremVerdict", "ForcedInvariantViolated", "Pinned",
    "registry", "get_entry", "check", "check_all", "iter_verdicts", "cross_reference", "CheckReport",
    "TheoremSummary", "XRef", "SubsetMask",
]
