from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from lattice_lab.lattice import discriminant_group, is_two_elementary
from lattice_lab.standard import (E1_GLUE, e1_lattice, e2_lattice, e2_superlattice_witnesses, e_coords_from_m,
                                  e_lattice, e_norm_minus4, m_coords_from_e, m_lattice, m_prime,
                                  m_superlattice_witnesses, n_lattice)


def test_m_lattice_invariants():
    m = m_lattice()
    assert m.rank == 12 and m.is_even and m.is_negative_definite
    assert abs(m.det) == 2**12 // 4
    assert is_two_elementary(m)


def test_m_contains_m_prime_with_index_two():
    assert abs(m_prime().det) == 4 * abs(m_lattice().det)


@given(st.lists(st.integers(-5, 5), min_size=12, max_size=12))
def test_coordinate_change_round_trip(a):
    c = m_coords_from_e(a)
    assert e_coords_from_m(c) == [Fraction(x) for x in a]
    assert m_lattice().norm(c) == -2 * sum(x * x for x in a)


def test_n_lattice():
    n = n_lattice()
    assert n.det == -2**20
    assert n.inertia() == (1, 21)
    assert discriminant_group(n).elementary_divisors == (2,) * 20


def test_e2_and_e1():
    assert abs(e2_lattice().det) == 2**10
    assert e_lattice().norm(E1_GLUE) == -4
    e1 = e1_lattice()
    assert abs(e1.det) == 2**8 and e1.is_even and is_two_elementary(e1)


def test_m_superlattice_witnesses():
    w = m_superlattice_witnesses()
    assert len(w) == 495
    m = m_lattice()
    for x, v in w:
        assert v is not None
        assert m.norm(v) == -2
        assert all((2 * a - b) % 2 == 0 and (2 * a).denominator == 1 for a, b in zip(v, x))


def test_e2_superlattice_witnesses():
    w = e2_superlattice_witnesses()
    assert len(w) == 527
    e = e_lattice()
    for x, z in w:
        assert z is not None
        assert e.norm(z) == -4
        assert all((a - b) % 2 == 0 for a, b in zip(z, x))


def test_e_norm_minus4_on_a_known_class():
    z = e_norm_minus4(E1_GLUE)
    assert e_lattice().norm(z) == -4
    assert all((a - b) % 2 == 0 for a, b in zip(z, E1_GLUE))
