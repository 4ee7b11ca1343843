import json

import pytest

from splicelink.atlas import (atlas_document, emit_atlas, enumerate_chains,
                              ordered_factorizations)
from splicelink.semigroup import gaps_brute_force, member, tower
from splicelink.splice import PuiseuxChain, genus, validate

from conftest import brute_force_chains, closure_members


def chains(degree, **kw):
    return [e.chain for e in enumerate_chains(degree, **kw)]


def family(degree, first):
    return [c.pairs[1][0] for c in chains(degree) if c.n == 2 and c.pairs[0] == first]


def test_factorizations():
    assert ordered_factorizations(12) == [
        (2, 2, 3), (2, 3, 2), (2, 6), (3, 2, 2), (3, 4), (4, 3), (6, 2), (12,)]


def test_degree_6_full():
    expect = [PuiseuxChain([(5, 6)])] + [PuiseuxChain([(2, 3), (k, 2)]) for k in (3, 5, 7, 9, 11)]
    assert chains(6) == expect


def test_degree_6_without_positive_braids():
    assert chains(6, include_positive_braids=False) == [
        PuiseuxChain([(2, 3), (3, 2)]), PuiseuxChain([(2, 3), (5, 2)])]


def test_degree_8():
    assert family(8, (3, 4)) == [3, 7, 9, 11, 13, 15, 17, 19, 21, 23]
    torus = [c for c in chains(8) if c.n == 1]
    assert torus == [PuiseuxChain([(p, 8)]) for p in (3, 5, 7)]


def test_degree_12_five_six_family():
    ks = family(12, (5, 6))
    members = closure_members([6, 5], 60)
    assert ks == [k for k in range(1, 60, 2) if k in members]
    assert ks[:6] == [5, 11, 15, 17, 21, 23] and ks[-1] == 59


@pytest.mark.parametrize("j", [2, 3, 4])
def test_degree_10_families(j):
    members = closure_members([5, j], 10 * j)
    assert family(10, (j, 5)) == [k for k in range(1, 10 * j, 2) if k in members]


def test_degree_2_is_empty():
    assert chains(2) == []
    assert atlas_document(2)["entries"] == []


def test_matches_brute_force():
    for d in range(2, 17):
        assert sorted(chains(d), key=lambda c: (c.n, c.pairs)) == \
            sorted(brute_force_chains(d), key=lambda c: (c.n, c.pairs))


def test_entries_are_valid_and_consistent():
    for d in range(2, 13):
        for entry in enumerate_chains(d):
            assert validate(entry.chain).valid
            assert entry.chain.degree == d
            assert tower(entry.chain).gap_sizes[-1] == genus(entry.chain) == \
                len(gaps_brute_force(entry.chain.pole_orders()))


def test_emit_json_is_deterministic():
    a = emit_atlas(6, "json")
    b = emit_atlas(6, "json")
    assert a == b
    doc = json.loads(a)
    assert doc["count"] == 6 and len(doc["entries"]) == 6
    assert doc["entries"][2]["chain"] == [[2, 3], [5, 2]]
    assert doc["entries"][2]["positive_braid"] is False


def test_emit_table():
    text = emit_atlas(6, "table")
    assert "[(2,3),(5,2)]" in text and text.endswith("6 chain(s)\n")


def test_emit_unknown_format():
    with pytest.raises(ValueError):
        emit_atlas(6, "xml")
