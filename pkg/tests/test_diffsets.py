from itertools import combinations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from schurlab import diffsets as DS
from schurlab.errors import SchurLabError


def scan_difference_sets(v):
    """Every nonempty subset of Z_v tested by counting differences directly."""
    out = set()
    for k in range(1, v + 1):
        for D in combinations(range(v), k):
            counts = [0] * v
            for x in D:
                for y in D:
                    counts[(x - y) % v] += 1
            if len(set(counts[1:])) <= 1:
                out.add(D)
    return out


def test_paley_seven():
    c = DS.is_difference_set([1, 2, 4], 7)
    assert (c.k, c.lam) == (3, 1)


def test_singleton():
    assert DS.is_difference_set([5], 9).lam == 0


def test_not_a_difference_set():
    assert DS.is_difference_set([1, 2], 7) is None


def test_empty_rejected():
    with pytest.raises(SchurLabError):
        DS.is_difference_set([], 7)


@pytest.mark.parametrize("p, residues", [(7, {1, 2, 4}), (11, {1, 3, 4, 5, 9})])
def test_paley_sets(p, residues):
    assert DS.paley_set(p) == residues


@pytest.mark.parametrize("p", [5, 9, 13])
def test_paley_precondition(p):
    with pytest.raises(SchurLabError):
        DS.paley_set(p)


@pytest.mark.parametrize("v", range(1, 14))
def test_enumeration_matches_scan(v):
    assert {c.D for c in DS.enumerate_difference_sets(v)} == scan_difference_sets(v)


def test_seven_at_size_three():
    assert len([c for c in DS.enumerate_difference_sets(7) if c.k == 3]) == 14


def test_seventeen_has_no_middle_sizes():
    assert not [c for c in DS.enumerate_difference_sets(17) if 2 <= c.k <= 15]
    assert [k for k in DS.admissible_sizes(17) if 2 <= k <= 15] == []


def test_five_only_trivial_sizes():
    assert {c.k for c in DS.enumerate_difference_sets(5)} == {1, 4, 5}


@pytest.mark.parametrize("v", [7, 11, 12, 13])
def test_closed_under_translation_complement_and_units(v):
    found = {c.D for c in DS.enumerate_difference_sets(v)}
    for D in found:
        for g in range(v):
            assert tuple(sorted((x + g) % v for x in D)) in found
        comp = tuple(x for x in range(v) if x not in D)
        assert not comp or comp in found
        for m in range(1, v):
            if gcd(m, v) == 1:
                assert tuple(sorted({m * x % v for x in D})) in found


@given(st.integers(2, 20).flatmap(lambda v: st.tuples(st.just(v), st.sets(st.integers(0, v - 1), min_size=1))))
def test_certificate_identity(case):
    v, D = case
    c = DS.is_difference_set(D, v)
    if c is not None:
        assert c.k * (c.k - 1) == c.lam * (v - 1)


def test_triviality():
    p = DS.make_difference_partition(7, [[0], [1, 2, 4], [3, 5, 6]])
    assert p.triviality == "trivial"
    D = sorted(DS.paley_set(11))
    q = DS.make_difference_partition(11, [D, [x for x in range(11) if x not in D]])
    assert q.triviality == "trivial"


def test_partition_needs_difference_set_blocks():
    with pytest.raises(SchurLabError):
        DS.make_difference_partition(7, [[0, 1], [2, 3, 4, 5, 6]])


def test_seven_all_mode_has_paley_partition():
    parts = DS.find_difference_partitions(7)
    assert ((0,), (1, 2, 4), (3, 5, 6)) in {p.blocks for p in parts}


@pytest.mark.parametrize("v", [5, 7, 11, 13, 17, 23])
def test_no_non_trivial_partitions(v):
    search = DS.search_difference_partitions(v, "non-trivial-only")
    assert search.partitions == []
    rec = search.to_record()
    assert rec["exhaustive"] is True
    assert rec["size_multisets"] == []


def test_thirteen_size_arithmetic():
    rec = DS.search_difference_partitions(13, "non-trivial-only").to_record()
    assert rec["admissible_block_sizes"] == [4, 9]


def test_size_multisets():
    assert DS.size_multisets(31, [6, 10, 15], 3) == [(15, 10, 6)]
    assert DS.size_multisets(13, [4, 9], 3) == []


def brute_partitions(v, library):
    """Every set of pairwise disjoint library blocks covering Z_v."""
    found = set()

    def rec(rest, chosen, start):
        if not rest:
            found.add(tuple(sorted(chosen)))
            return
        for i in range(start, len(library)):
            B = set(library[i])
            if B <= rest:
                rec(rest - B, chosen + [library[i]], i + 1)

    rec(set(range(v)), [], 0)
    return found


@pytest.mark.parametrize("v", [3, 4, 5, 7])
def test_exact_cover_against_brute_force(v):
    library = [c.D for c in DS.enumerate_difference_sets(v)]
    got = {p.blocks for p in DS.find_difference_partitions(v)}
    assert got == brute_partitions(v, library)


def test_exact_cover_rejects_outside_subset():
    with pytest.raises(SchurLabError):
        list(DS.exact_covers(range(3), [frozenset({5})]))
