from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_lab.lattice import (GramLattice, LatticeError, RationalVector, bareiss_det, coset_vectors,
                                 direct_sum, discriminant_group, fincke_pohst, index2_even_glue,
                                 is_two_elementary, overlattice, rescale, roots, short_vectors,
                                 smith_normal_form, solve_rational, two_elementary_sigma)
from lattice_lab.roots import build_root_lattice


def _fraction_det(m):
    a = [[Fraction(x) for x in r] for r in m]
    n, det = len(a), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=150)
@given(square)
def test_bareiss_matches_fraction_elimination(m):
    assert bareiss_det(m) == _fraction_det(m)


@settings(max_examples=150)
@given(square)
def test_smith_normal_form_factorisation(m):
    d, P, Q = smith_normal_form(m)
    n = len(m)
    assert _matmul(_matmul(P, m), Q) == [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert abs(bareiss_det(P)) == 1 and abs(bareiss_det(Q)) == 1
    nz = [x for x in d if x]
    assert all(x >= 0 for x in d)
    assert d[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_gram_validation():
    with pytest.raises(LatticeError):
        GramLattice.from_rows([[2, 1], [0, 2]])
    with pytest.raises(LatticeError):
        GramLattice.from_rows([[1, 1], [1, 1]])
    with pytest.raises(LatticeError):
        GramLattice.from_rows([])


def test_json_round_trip():
    lat = build_root_lattice("D4")
    assert GramLattice.from_json(lat.to_json()) == lat
    bad = dict(lat.to_json(), rank=3)
    with pytest.raises(LatticeError):
        GramLattice.from_json(bad)


@pytest.mark.parametrize("name,divisors", [
    ("A1", (2,)), ("A2", (3,)), ("A3", (4,)), ("D4", (2, 2)), ("D5", (4,)),
    ("D6", (2, 2)), ("E6", (3,)), ("E7", (2,)), ("E8", ()),
])
def test_root_lattice_discriminants(name, divisors):
    dg = discriminant_group(build_root_lattice(name))
    assert dg.elementary_divisors == divisors


def test_discriminant_generators_are_dual_vectors():
    lat = build_root_lattice("D6")
    dg = discriminant_group(lat)
    for g in dg.generators:
        for i in range(lat.rank):
            e = [int(i == j) for j in range(lat.rank)]
            assert lat.dot(g.fractions(), e).denominator == 1


def test_inertia_and_definiteness():
    u = GramLattice.from_rows([[0, 1], [1, 0]])
    assert u.inertia() == (1, 1)
    assert not u.is_negative_definite
    e8 = build_root_lattice("E8")
    assert e8.inertia() == (0, 8) and e8.is_negative_definite
    assert direct_sum(u, e8).inertia() == (1, 9)


def test_two_elementary_sigma():
    lat = direct_sum(*[build_root_lattice("A1")] * 4)
    assert is_two_elementary(lat)
    assert two_elementary_sigma(lat) == 2
    with pytest.raises(LatticeError):
        two_elementary_sigma(build_root_lattice("A2"))


def test_rescale_rejects_zero():
    with pytest.raises(LatticeError):
        rescale(build_root_lattice("A1"), 0)


def test_rational_vector_normalises():
    v = RationalVector((2, 4), 4)
    assert v.numerators == (1, 2) and v.denominator == 2
    assert (v + v).is_integral()
    assert v.reduced_mod_lattice().fractions() == [Fraction(1, 2), Fraction(0)]
    with pytest.raises(LatticeError):
        RationalVector((1,), 0)


def test_overlattice_of_4a1_is_d4():
    # 4A1 plus half the sum of its roots is D4
    lat = direct_sum(*[build_root_lattice("A1")] * 4)
    glued, _, _ = overlattice(lat, [RationalVector((1, 1, 1, 1), 2)])
    assert abs(glued.det) == 16 // 4
    assert glued.is_even
    assert discriminant_group(glued).elementary_divisors == (2, 2)
    with pytest.raises(LatticeError):
        overlattice(build_root_lattice("A1"), [RationalVector((1,), 2)])


def _brute_short(q, bound, shift, box=4):
    n = len(q)
    out = []
    for x in itertools.product(range(-box, box + 1), repeat=n):
        y = [Fraction(a) + s for a, s in zip(x, shift)]
        v = sum(y[i] * q[i][j] * y[j] for i in range(n) for j in range(n))
        if v <= bound:
            out.append((x, v))
    return sorted(out)


@pytest.mark.parametrize("name", ["A2", "D4", "A3"])
@pytest.mark.parametrize("shift", [(0, 0, 0, 0), (Fraction(1, 2), 0, Fraction(1, 3), 0)])
def test_fincke_pohst_matches_brute_force(name, shift):
    lat = build_root_lattice(name)
    q = [[-x for x in r] for r in lat.gram]
    s = shift[:lat.rank]
    got = sorted(fincke_pohst(q, 6, s))
    assert got == _brute_short(q, 6, s)


@pytest.mark.parametrize("name,count", [("A2", 6), ("D4", 24), ("E6", 72), ("E7", 126), ("E8", 240)])
def test_root_counts(name, count):
    assert len(roots(build_root_lattice(name))) == count


def test_short_vectors_indefinite_box():
    u = GramLattice.from_rows([[0, 1], [1, 0]])
    vs = short_vectors(u, -2, box_bound=2)
    assert (1, -1) in vs and (-1, 1) in vs
    with pytest.raises(LatticeError):
        short_vectors(u, -2, require_complete=True)


def test_coset_vectors_needs_definite():
    with pytest.raises(LatticeError):
        coset_vectors(GramLattice.from_rows([[0, 1], [1, 0]]), [0, 0], -2)


def test_coset_vectors_half_sum_of_d4():
    lat = build_root_lattice("D4")
    hits = coset_vectors(lat, [Fraction(1, 2)] * 4, -2)
    for h in hits:
        assert lat.norm(h) == -2


def test_index2_even_glue_for_a1_sum():
    lat = direct_sum(*[build_root_lattice("A1")] * 8)
    glue = index2_even_glue(lat)
    assert all(sum(x) % 4 == 0 for x in glue)
    assert len(glue) == 70 + 1  # weight-4 subsets and the full set


def test_solve_rational():
    assert solve_rational([[2, 1], [1, 3]], [3, 4]) == [1, 1]
