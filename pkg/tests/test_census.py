from __future__ import annotations

import json

import numpy as np
import pytest

from lattice_lab.census import (ALT_SIGMA, REFERENCE_SIGMA, census, closure, conjugator, default_cache_path,
                                invariant, maximal_by_divisibility, normalizer, ramification_table, sym9,
                                version_hash)
from lattice_lab.perms import Permutation, PermGroup


def _rank(*cycles):
    return sym9().to_rank(Permutation.from_cycles(9, *cycles))


def test_rank_round_trip():
    S = sym9()
    for r in (0, 1, 12345, S.size - 1):
        assert S.to_rank(S.from_ranks(r)) == r
    assert S.size == 362880


def test_inverse_and_compose_tables():
    S = sym9()
    rng = np.random.default_rng(0)
    rs = rng.integers(0, S.size, 50)
    assert np.all(S.compose(rs, S.inv[rs]) == S.identity)
    a, b = int(rs[0]), int(rs[1])
    assert int(S.compose(a, b)[0]) == S.to_rank(S.from_ranks(a) * S.from_ranks(b))
    assert int(S.order[a]) == S.from_ranks(a).order()


def test_closure_matches_schreier_sims():
    gens = [_rank((0, 1, 2, 3)), _rank((0, 2))]
    H = closure(gens)
    G = PermGroup([sym9().from_ranks(g) for g in gens])
    assert H.order == G.order() == 8


def test_normalizer_of_transposition():
    H = closure([_rank((0, 1))])
    # C(t) = <t> x S7 has order 2 * 5040
    assert len(normalizer(H)) == 2 * 5040


def test_conjugator():
    A = closure([_rank((0, 1), (2, 3))])
    B = closure([_rank((4, 5), (6, 7))])
    C = closure([_rank((4, 5))])
    g = conjugator(A, B)
    assert g is not None
    S = sym9()
    h = A.generators[0]
    assert int(S.compose(S.compose(g, h), S.inv[g])[0]) in set(B.elements.tolist())
    assert conjugator(A, C) is None
    assert invariant(A) == invariant(B) != invariant(C)


def test_maximal_by_divisibility():
    assert maximal_by_divisibility([1, 2, 4, 3, 6, 5]) == [6, 5, 4]
    assert maximal_by_divisibility(REFERENCE_SIGMA) == sorted(REFERENCE_SIGMA, reverse=True)


def test_ramification_table():
    assert ramification_table({"maximal_orders": [2, 1]}) == [512, 1024]


def test_cache_path_env(monkeypatch, tmp_path):
    monkeypatch.setenv("LATTICE_LAB_CACHE", str(tmp_path / "c.json"))
    assert default_cache_path() == tmp_path / "c.json"


def test_version_hash_stable():
    assert version_hash() == version_hash()
    assert len(version_hash()) == 16


@pytest.fixture(scope="module")
def census_data():
    return census()


def test_census_summary(census_data):
    s = census_data["summary"]
    assert s["class_count"] == 171
    assert s["class_count_without_trivial"] == 170
    assert s["two_subgroup_classes"] == 109
    assert s["maximal_orders"] == list(ALT_SIGMA)
    assert s["third_entry"] == 60
    assert s["all_orders_divide_maximal"]
    assert not s["matches_reference_sigma"]
    assert s["orders_not_dividing_reference_sigma"] == [60]


def test_census_records_are_groups(census_data):
    recs = census_data["records"]
    assert [r["class_id"] for r in recs] == list(range(len(recs)))
    for r in recs[::17]:
        gens = [Permutation(tuple(g)) for g in r["generators"]]
        G = PermGroup(gens, 9)
        assert G.order() == r["order"]


def test_cache_round_trip(tmp_path, census_data):
    path = tmp_path / "census.json"
    path.write_text(json.dumps(census_data, sort_keys=True))
    assert census(path) == census_data
