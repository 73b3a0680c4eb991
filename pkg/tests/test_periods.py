from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_lab.gf2m import Subspace, gf
from lattice_lab.periods import (Constraints, PeriodError, PeriodPoint, SamplerError, contains_m_complement,
                                 dump_periods, etale_equivalence_check, in_M0, in_M1, is_12A1,
                                 is_period_point, load_periods, m_projection_is_rational,
                                 nonfree_map_injective, period_report, picard_overlattice, sample_period,
                                 tangent_space)
from lattice_lab.standard import e_lattice


@pytest.fixture(scope="module")
def generic8():
    return sample_period(0, 8)


def test_generic_sample_properties(generic8):
    v = generic8
    assert is_period_point(v)
    assert v.rational_dim == 6
    assert in_M0(v).in_m0 and is_12A1(v) and in_M1(v).in_m1
    assert tangent_space(v).dim == 2
    assert nonfree_map_injective(v).injective
    et = etale_equivalence_check(v)
    assert et.agree and et.pairs_agree
    assert m_projection_is_rational(v)
    assert contains_m_complement(v)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10**6))
def test_sampler_is_deterministic(seed):
    a = sample_period(seed, 8)
    b = sample_period(seed, 8)
    assert a == b


def test_seeds_differ():
    assert sample_period(1, 8) != sample_period(2, 8)


@pytest.mark.parametrize("m,pair", [(8, (2, 5)), (6, (1, 12)), (4, (3, 4))])
def test_defect_sample(m, pair):
    v = sample_period(7, m, Constraints("defect", pair))
    assert pair in in_M1(v).defects
    nf = nonfree_map_injective(v)
    assert pair in nf.failing and nf.diagonal[pair]
    assert etale_equivalence_check(v).agree


@pytest.mark.parametrize("m", [4, 8])
def test_non_12a1_sample(m):
    v = sample_period(3, m, Constraints("non12a1"))
    assert is_period_point(v) and in_M0(v).in_m0 and not is_12A1(v)
    with pytest.raises(PeriodError):
        tangent_space(v)


def test_e_part_sample_has_norm_minus4_witness():
    v = sample_period(4, 8, Constraints("e_part"))
    rep = in_M0(v)
    assert not rep.in_m0
    assert e_lattice().norm(rep.witness) == -4


def test_generic_sampling_impossible_below_degree_8():
    with pytest.raises(SamplerError) as info:
        sample_period(0, 4, budget=300)
    assert info.value.stats["draws"] > 0


def test_sampler_rejects_odd_degree():
    with pytest.raises(SamplerError):
        sample_period(0, 5)


def test_constraint_validation():
    with pytest.raises(ValueError):
        Constraints("weird")
    with pytest.raises(ValueError):
        Constraints("defect")


def test_is_period_point_failures(generic8):
    F = gf(8)
    small = Subspace.span(F, generic8.subspace.rows[:9], 20)
    assert is_period_point(small).reason == "dimension"
    unit = [[int(i == j) for j in range(20)] for i in range(10)]
    assert is_period_point(Subspace.span(F, unit, 20)).reason == "isotropy"


def test_json_round_trip(generic8):
    pts = load_periods(dump_periods([generic8]))
    assert pts == [generic8]
    assert PeriodPoint.from_json(generic8.to_json()) == generic8


def test_picard_overlattice(generic8):
    pic = picard_overlattice(generic8)
    assert pic.index == 2**generic8.rational_dim
    assert pic.disc == 2**20 // 4**generic8.rational_dim
    assert pic.lattice.is_even


def test_period_report(generic8):
    rep = period_report(generic8)
    assert rep["valid"] and rep["agree"] and rep["tangent_dim"] == 2
    assert rep["failing_pairs"] == [] and rep["defects"] == []
