from __future__ import annotations

import itertools

import pytest

from infratop import space as sp
from infratop.setcore import GroundSet
from infratop.space import InfraSpace, MissingEmptyOrFull, NotMeetClosed, ValidationError

from conftest import EX41_OPENS, small_universe


def test_validate_accepts_example(ex41):
    assert ex41.n == 4
    assert [ex41.fmt(o) for o in ex41.opens] == ["{}", "{a}", "{b}", "{a,c}", "{a,b,c,d}"]


def test_missing_empty_or_full():
    g = GroundSet.of_size(2)
    with pytest.raises(MissingEmptyOrFull) as info:
        sp.validate(g, [0b01, 0b11])
    assert info.value.missing_empty and not info.value.missing_full


def test_not_meet_closed_reports_witness():
    g = GroundSet.of_size(3)
    f = [0, 0b011, 0b110, 0b111]
    with pytest.raises(NotMeetClosed) as info:
        sp.validate(g, f)
    assert info.value.witness == (0b011, 0b110)
    assert info.value.missing_meets == [(0b011, 0b110, 0b010)]
    assert isinstance(info.value, ValidationError)


def test_out_of_range_mask_rejected():
    with pytest.raises(ValidationError):
        sp.validate(GroundSet.of_size(2), [0, 3, 8])


def test_complete_adds_missing_meets():
    g = GroundSet.of_size(3)
    s, added = sp.complete(g, [0b011, 0b110])
    assert set(added) == {0, 0b010, 0b111}
    assert s.opens == (0, 0b010, 0b011, 0b110, 0b111)


def test_topology_is_infra_topology():
    # the discrete topology and a chain topology both pass validation
    g = GroundSet.of_size(3)
    sp.validate(g, range(8))
    sp.validate(g, [0, 0b001, 0b011, 0b111])


def test_example_operators(ex41):
    m = ex41.ground.mask
    assert sp.closure(ex41, m("a")) == m("acd")
    assert sp.interior(ex41, m("ab")) == m("ab")
    assert not ex41.is_open(m("ab"))  # interior need not be open
    assert sp.derived_set(ex41, m("a")) == m("cd")
    assert sp.exterior(ex41, m("a")) == m("b")
    assert sp.boundary(ex41, m("a")) == m("cd")
    assert sp.boundary(ex41, 0) == 0


def _brute_interior(s, a):
    # x is interior iff some open subset of A contains x
    return sum(1 << x for x in range(s.n) if any(o >> x & 1 and o & ~a == 0 for o in s.opens))


def _brute_closure(s, a):
    # x is in the closure iff every closed superset of A contains x
    return sum(1 << x for x in range(s.n) if all(c >> x & 1 for c in s.closed if a & ~c == 0))


def test_operators_against_pointwise_definitions():
    for s in small_universe(3):
        for a in range(1 << s.n):
            assert sp.interior(s, a) == _brute_interior(s, a)
            assert sp.closure(s, a) == _brute_closure(s, a)
            assert sp.exterior(s, a) == sp.interior(s, s.full ^ a)
            assert sp.boundary(s, a) | sp.interior(s, a) | sp.exterior(s, a) == s.full


def test_closure_and_interior_are_dual():
    for s in small_universe(4):
        for a in range(1 << s.n):
            assert sp.closure(s, a) == s.full ^ sp.interior(s, s.full ^ a)


def test_from_names_round_trip(ex41):
    again = InfraSpace.from_names(ex41.ground.elements, [ex41.ground.names(o) for o in reversed(ex41.opens)])
    assert again == ex41
    assert sorted(map(sorted, EX41_OPENS)) == sorted(sorted(ex41.ground.names(o)) for o in ex41.opens)


def test_every_meet_subfamily_validates():
    g = GroundSet.of_size(2)
    for bits in itertools.product([0, 1], repeat=2):
        f = [0, 3] + [m for m, b in zip((1, 2), bits) if b]
        sp.validate(g, f)
