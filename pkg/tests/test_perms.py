from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_lab.perms import (Permutation, PermGroup, SignedPermGroup, are_conjugate_subgroups,
                               signed_permutation, symmetric_group, trivial_group)

N = 6
perms6 = st.permutations(range(N)).map(lambda p: Permutation(tuple(p)))


def _closure(gens, n):
    e = Permutation.identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@given(perms6, perms6, perms6)
def test_group_laws(a, b, c):
    e = Permutation.identity(N)
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == e == a.inverse() * a
    assert a ** a.order() == e
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert a.conjugate(b).cycle_type() == a.cycle_type()


@given(perms6)
def test_cycles_round_trip(a):
    assert Permutation.from_cycles(N, *a.cycles()) == a
    assert sum(a.cycle_type()) == N
    assert a ** -1 == a.inverse()


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(perms6, min_size=1, max_size=3))
def test_schreier_sims_matches_closure(gens):
    G = PermGroup(gens, N)
    elems = _closure(gens, N)
    assert G.order() == len(elems)
    assert set(G.elements()) == elems
    for g in elems:
        assert g in G


@settings(max_examples=30, deadline=None)
@given(st.lists(perms6, min_size=1, max_size=2), perms6)
def test_membership_outside(gens, x):
    G = PermGroup(gens, N)
    assert (x in G) == (x in _closure(gens, N))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 9])
def test_symmetric_group_order(n):
    assert symmetric_group(n).order() == math.factorial(n)


def test_trivial_group():
    assert trivial_group(4).order() == 1
    assert list(trivial_group(4).elements()) == [Permutation.identity(4)]


def test_weyl_d9():
    W = SignedPermGroup(9)
    assert W.order() == 2**8 * math.factorial(9) == 92897280
    assert W.sign_kernel_order() == 256
    g = signed_permutation([1, 0, 2, 3, 4, 5, 6, 7, 8], [-1, -1, 1, 1, 1, 1, 1, 1, 1])
    assert g in W
    odd = signed_permutation(list(range(9)), [-1] + [1] * 8)
    assert odd not in W
    assert W.forget_signs(g) == Permutation.from_cycles(9, (0, 1))


def test_conjugate_subgroups():
    S = symmetric_group(6)
    a = PermGroup([Permutation.from_cycles(6, (0, 1, 2))])
    b = PermGroup([Permutation.from_cycles(6, (3, 4, 5))])
    c = PermGroup([Permutation.from_cycles(6, (0, 1), (2, 3))])
    g = are_conjugate_subgroups(a, b, S)
    assert g is not None
    assert all(h.conjugate(g) in b for h in a.generators)
    assert are_conjugate_subgroups(a, c, S) is None


def test_conjugacy_respects_ambient():
    # <(0 1)> and <(2 3)> are conjugate in S4 but not in the group fixing {0, 1}
    a = PermGroup([Permutation.from_cycles(4, (0, 1))])
    b = PermGroup([Permutation.from_cycles(4, (2, 3))])
    assert are_conjugate_subgroups(a, b, symmetric_group(4)) is not None
    stab = PermGroup([Permutation.from_cycles(4, (0, 1)), Permutation.from_cycles(4, (2, 3))])
    assert are_conjugate_subgroups(a, b, stab) is None


def test_subgroup_and_normal():
    S = symmetric_group(4)
    V = PermGroup([Permutation.from_cycles(4, (0, 1), (2, 3)), Permutation.from_cycles(4, (0, 2), (1, 3))])
    assert V.order() == 4 and V.is_subgroup_of(S)
    assert S.normalizes(V)
    assert V.orbits() == [(0, 1, 2, 3)]
