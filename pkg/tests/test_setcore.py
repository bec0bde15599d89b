from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from infratop.setcore import (
    GroundSet,
    apply_permutation,
    canonical_form,
    complement,
    decode_family,
    encode_family,
    is_subset,
    join,
    make_family,
    meet,
    minus,
    permutation_tables,
    popcount,
)


def test_ground_set_masks_and_names():
    g = GroundSet(("a", "b", "c", "d"))
    assert g.n == 4 and g.full == 0b1111
    assert g.mask(["a", "c"]) == 0b101
    assert g.names(0b1010) == ["b", "d"]
    assert g.format(0b101) == "{a,c}"
    assert g.format(0) == "{}"


def test_ground_set_rejects_bad_input():
    with pytest.raises(ValueError):
        GroundSet(("a", "a"))
    with pytest.raises(ValueError):
        GroundSet(())
    with pytest.raises(ValueError):
        GroundSet.of_size(2).mask(["z"])


def test_of_size_uses_letters():
    assert GroundSet.of_size(3).elements == ("a", "b", "c")


masks4 = st.integers(min_value=0, max_value=15)


@given(masks4, masks4)
def test_set_algebra_matches_python_sets(a, b):
    g = GroundSet.of_size(4)

    def as_set(m):
        return set(g.names(m))

    assert as_set(meet(a, b)) == as_set(a) & as_set(b)
    assert as_set(join(a, b)) == as_set(a) | as_set(b)
    assert as_set(minus(a, b)) == as_set(a) - as_set(b)
    assert as_set(complement(g, a)) == set(g.elements) - as_set(a)
    assert is_subset(a, b) == (as_set(a) <= as_set(b))
    assert popcount(a) == len(as_set(a))


@given(st.sets(masks4))
def test_family_encoding_round_trip(members):
    fam = make_family(members)
    assert decode_family(encode_family(fam)) == fam
    assert list(fam) == sorted(set(members))


def test_permutation_tables_match_apply_permutation():
    for n in range(1, 5):
        perms = list(itertools.permutations(range(n)))
        tables = permutation_tables(n)
        assert len(tables) == len(perms)
        for p, table in zip(perms, tables):
            assert list(table) == [apply_permutation(p, m) for m in range(1 << n)]
            assert sorted(table) == list(range(1 << n))


def test_canonical_form_is_permutation_invariant():
    g = GroundSet.of_size(3)
    fam = make_family([0, 0b001, 0b011, 0b111])
    forms = {
        canonical_form(g, [apply_permutation(p, m) for m in fam]) for p in itertools.permutations(range(3))
    }
    assert len(forms) == 1
    (form,) = forms
    assert form <= fam
