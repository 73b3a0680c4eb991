from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_lab.discform import (E_PART, F2, M_PART, ONES, PAIRS, F2QuadraticSpace, FormError, anisotropic_plane,
                                  apply_matrix, arf_and_witt, count_singular, discriminant_space, e_ij,
                                  hyperbolic_plane, lift_to_working, m_part_coords, normal_symplectic_basis,
                                  orthogonal_sum, witt_extend, working_section, working_to_n0)
from lattice_lab.gf2m import Subspace, gf
from lattice_lab.standard import n_lattice

bits20 = st.lists(st.integers(0, 1), min_size=20, max_size=20)


def test_small_spaces():
    assert arf_and_witt(hyperbolic_plane()) == (0, 1)
    assert arf_and_witt(anisotropic_plane()) == (1, 0)
    assert arf_and_witt(orthogonal_sum(anisotropic_plane(), anisotropic_plane())) == (0, 2)


@pytest.mark.parametrize("h,a", [(1, 0), (2, 0), (1, 1), (2, 1), (3, 1)])
def test_singular_count_formula(h, a):
    space = orthogonal_sum(*([hyperbolic_plane()] * h + [anisotropic_plane()] * a))
    n = h + a
    arf = a % 2
    # number of nonzero singular vectors of a 2n-dim quadratic space
    expected = 2**(2 * n - 1) + (-1)**arf * 2**(n - 1) - 1
    assert count_singular(space) == expected
    assert arf_and_witt(space)[0] == arf


def test_form_validation():
    with pytest.raises(FormError):
        F2QuadraticSpace(2, ((1, 0), (0, 0)), (0, 0))
    with pytest.raises(FormError):
        F2QuadraticSpace(2, ((0, 1), (0, 0)), (0, 0))
    with pytest.raises(FormError):
        arf_and_witt(F2QuadraticSpace(2, ((0, 0), (0, 0)), (1, 0)))


def test_n0_invariants():
    D = discriminant_space()
    assert D.space.dim == 20 and D.space.is_nondegenerate
    assert arf_and_witt(D.space) == (1, 9)
    m = D.space.restricted([tuple(int(i == j) for j in range(20)) for i in M_PART])
    e = D.space.restricted([tuple(int(i == j) for j in range(20)) for i in E_PART])
    assert arf_and_witt(m)[0] == 1
    assert arf_and_witt(e)[0] == 0
    assert count_singular(m) == 495
    assert count_singular(e) == 527


@settings(max_examples=60, deadline=None)
@given(bits20, st.lists(st.integers(-3, 3), min_size=22, max_size=22))
def test_q_independent_of_lift(v, shift):
    D = discriminant_space()
    N = n_lattice()
    x = D.lift(v)
    y = [a + 2 * b for a, b in zip(x, shift)]
    assert (N.norm(x) // 4) % 2 == (N.norm(y) // 4) % 2 == D.space.q(v)
    assert N.norm(y) % 4 == 0


@settings(max_examples=60, deadline=None)
@given(bits20, bits20)
def test_polarisation(v, w):
    S = discriminant_space().space
    vw = [a ^ b for a, b in zip(v, w)]
    assert S.q(vw) == S.q(v) ^ S.q(w) ^ S.b(v, w)


def test_e_ij_classes():
    S = discriminant_space().space
    for p in PAIRS:
        assert S.q(e_ij(*p)) == 1
    assert e_ij(11, 12) == (1,) * 10 + (0,) * 10


@given(st.lists(st.integers(0, 1), min_size=12, max_size=12).filter(lambda a: sum(a) % 2 == 0))
def test_m_part_coords_ignore_ones(a):
    flipped = [1 - x for x in a]
    assert m_part_coords(a) == m_part_coords(flipped)


@given(bits20)
def test_working_section_round_trip(v):
    w = working_section(v)
    assert sum(w[:12]) % 2 == 0
    assert working_to_n0(w) == tuple(v)
    assert working_to_n0([a ^ b for a, b in zip(w, ONES)]) == tuple(v)


def test_lift_to_working_adds_ones():
    F = gf(2)
    s = Subspace.span(F, [[1] + [0] * 19], 20)
    lifted = lift_to_working(s)
    assert lifted.dim == 2 and lifted.contains(ONES)


@pytest.mark.parametrize("seed", range(3))
def test_normal_symplectic_basis(seed):
    S = discriminant_space().space
    pairs = normal_symplectic_basis(S, rng=random.Random(seed))
    assert len(pairs) == 10
    flat = [v for p in pairs for v in p]
    for i, x in enumerate(flat):
        for j, y in enumerate(flat):
            expected = 1 if {i, j} in ({2 * k, 2 * k + 1} for k in range(10)) else 0
            assert S.b(x, y) == expected
    assert sum(S.q(e) & S.q(f) for e, f in pairs) == 1
    assert all(S.q(e) == S.q(f) == 0 for e, f in pairs[:-1])


@pytest.mark.parametrize("m", [1, 2])
def test_witt_extend(m):
    F = gf(m)
    S = orthogonal_sum(hyperbolic_plane(), hyperbolic_plane())
    A = witt_extend([((1, 0, 0, 0), (0, 0, 1, 0))], S, F, seed=1)
    assert apply_matrix(F, A, [1, 0, 0, 0]) == [0, 0, 1, 0]
    for v in itertools.product(range(F.size), repeat=4):
        assert S.q(apply_matrix(F, A, v), F) == S.q(v, F)


def test_witt_extend_rejects_non_isometry():
    S = orthogonal_sum(hyperbolic_plane(), anisotropic_plane())
    with pytest.raises(FormError):
        witt_extend([((1, 0, 0, 0), (0, 0, 1, 0))], S, F2)
