from __future__ import annotations

from fractions import Fraction

import pytest

from lattice_lab.lattice import LatticeError, discriminant_group
from lattice_lab.roots import (ROOTEMB_TYPES, DynkinType, a_vector, build_root_lattice, diagram_edges, e10,
                               enumerate_dominant_norm4, fundamental_weights, good_subchamber_cases,
                               is_even_in_lattice, orthogonal_root_decomposition, weight_norm_table,
                               weight_pairings, weight_vector)


def test_dynkin_parse_and_validation():
    assert DynkinType.parse("D12") == DynkinType("D", 12)
    assert str(DynkinType.parse("E10")) == "E10"
    for bad in ("D3", "E9", "A0", "F4"):
        with pytest.raises((LatticeError, ValueError)):
            DynkinType.parse(bad)


@pytest.mark.parametrize("name", ["A5", "D7", "E6", "E7", "E8"])
def test_diagram_is_a_tree(name):
    t = DynkinType.parse(name)
    edges = diagram_edges(t)
    assert len(edges) == t.rank - 1
    assert {v for e in edges for v in e} == set(range(1, t.rank + 1))


def test_e10_is_even_unimodular_hyperbolic():
    lat = e10()
    assert lat.det == -1
    assert lat.is_even
    assert lat.inertia() == (1, 9)
    assert discriminant_group(lat).elementary_divisors == ()


def test_fundamental_weights_are_dual_basis():
    lat = e10()
    for i, w in enumerate(fundamental_weights()):
        for j in range(10):
            assert lat.dot(w, [int(j == k) for k in range(10)]) == int(i == j)


def test_weight_values():
    w = fundamental_weights()
    assert w[0] == (4, 9, 7, 14, 12, 10, 8, 6, 4, 2)
    assert w[9] == (2, 4, 3, 6, 5, 4, 3, 2, 1, 0)
    norms = weight_norm_table()
    assert (norms[1], norms[9], norms[10]) == (4, 2, 0)
    assert all(norms[j] > 4 for j in range(2, 9))
    assert weight_pairings()[0][9] == 2


def test_pairings_symmetric_and_nonnegative():
    p = weight_pairings()
    assert all(p[i][j] == p[j][i] >= 0 for i in range(10) for j in range(10))


def test_varpi1_minus_varpi10_not_divisible_by_two():
    w = fundamental_weights()
    assert any((a - b) % 2 for a, b in zip(w[0], w[9]))


def test_dominant_norm4_classes():
    sols = enumerate_dominant_norm4()
    assert (1, 0, 0, 0, 0, 0, 0, 0, 0, 0) in sols
    lat = e10()
    for n in sols:
        assert lat.norm(weight_vector(n)) == 4
    assert sols == [(0,) * 8 + (1, 1), (1,) + (0,) * 9]


def test_other_norms_enumerate():
    assert enumerate_dominant_norm4(2) == [(0,) * 8 + (1, 0)]


@pytest.mark.parametrize("name", ROOTEMB_TYPES)
def test_a_vector_norm(name):
    lat = build_root_lattice(name)
    a = a_vector(name)
    assert lat.norm(a) == -2 * lat.rank


@pytest.mark.parametrize("name", ROOTEMB_TYPES)
@pytest.mark.parametrize("order", ["desc", "asc", "shuffle"])
def test_orthogonal_root_decomposition(name, order):
    lat = build_root_lattice(name)
    rs = orthogonal_root_decomposition(name, order=order, seed=3)
    assert len(rs) == lat.rank
    assert tuple(sum(c) for c in zip(*rs)) == a_vector(name)
    for i, x in enumerate(rs):
        for j, y in enumerate(rs):
            assert lat.dot(x, y) == (-2 if i == j else 0)


def test_a_vector_parity():
    assert [t for t in ROOTEMB_TYPES if is_even_in_lattice(t)] == ["D4", "D8", "D12", "E8"]


def test_a_vector_rejects_other_types():
    with pytest.raises(LatticeError):
        a_vector("A3")


def test_bad_order():
    with pytest.raises(ValueError):
        orthogonal_root_decomposition("D4", order="sideways")


def test_good_subchamber_cases():
    cases = good_subchamber_cases()
    assert all(a + b == -2 and a <= 0 < -b for a, b in cases)
    assert cases == {(Fraction(0), Fraction(-2)), (Fraction(-1), Fraction(-1))}
