"""The acceptance suite as data: one result per criterion, each a dict of named checks.

Results carry no timings, so the JSON of two runs with the same flags is identical.
"""

from __future__ import annotations

import random
from typing import Callable

PERIOD_DEGREES = (4, 6, 8)
GENERIC_SAMPLES = 100
DEFECT_SAMPLES = 20
NON12A1_SAMPLES = 10
RELABEL = (3, 1, 4, 0, 5, 8, 2, 6, 7)


def _result(cid: int, name: str, checks: dict, detail: dict | None = None) -> dict:
    return {"id": cid, "name": name, "passed": all(checks.values()), "checks": checks,
            "detail": detail or {}}


def weight_calculus(seed: int = 0) -> dict:
    from .roots import fundamental_weights, weight_pairings

    w = fundamental_weights()
    p = weight_pairings()
    checks = {
        "varpi1": w[0] == (4, 9, 7, 14, 12, 10, 8, 6, 4, 2),
        "varpi10": w[9] == (2, 4, 3, 6, 5, 4, 3, 2, 1, 0),
        "varpi1_sq_4": p[0][0] == 4,
        "varpi10_sq_0": p[9][9] == 0,
        "varpi1_dot_varpi10_2": p[0][9] == 2,
        "varpi9_sq_2": p[8][8] == 2,
        "others_sq_gt_4": all(p[j][j] > 4 for j in range(10) if j not in (0, 8, 9)),
    }
    return _result(1, "weight calculus", checks, {"norms": [p[j][j] for j in range(10)]})


def lattice_constants(seed: int = 0) -> dict:
    from .discform import arf_and_witt, discriminant_space
    from .lattice import discriminant_group, gram_det, is_two_elementary
    from .standard import e1_lattice, n_lattice

    N = n_lattice()
    dn = discriminant_group(N)
    D = discriminant_space()
    arf, witt = arf_and_witt(D.space)
    E1 = e1_lattice()
    checks = {
        "det_N": gram_det(N) == -2**20,
        "N_two_elementary": is_two_elementary(N),
        "sigma_N_10": len(dn.elementary_divisors) == 20,
        "dim_N0_20": D.space.dim == 20,
        "N0_split_arf0": arf == 0 and witt == 10,
        "disc_E1_256": abs(gram_det(E1)) == 2**8,
        "E1_two_elementary": is_two_elementary(E1),
    }
    return _result(2, "lattice constants", checks, {"N0_arf": arf, "N0_witt_index_f2": witt})


def two_elementary_types(seed: int = 0) -> dict:
    from .configs import two_elementary_connected_types

    found = two_elementary_connected_types(12)
    expected = ["A1", "D4", "D6", "D8", "D10", "D12", "E7", "E8"]
    return _result(3, "2-elementary components", {"types": found == expected}, {"types": found})


def configuration_classification(seed: int = 0) -> dict:
    from .configs import admissibility, classify, enumerate_candidates, is_even_configuration
    from .roots import is_even_in_lattice

    cands = enumerate_candidates()
    odd, even, reports = classify()
    realisations = [("desc", 0), ("asc", 0), ("shuffle", seed + 1)]
    invariant = all(len({admissibility(r.config, o, s).verdict for o, s in realisations}) == 1
                    for r in reports)
    flags = all(r.half_sum_in_lattice == is_even_configuration(r.config) for r in reports)
    parity = all(is_even_configuration(r.config) == all(is_even_in_lattice(t) for t in r.config.components)
                 for r in reports)
    checks = {
        "candidates_15": len(cands) == 15,
        "odd_list": [str(c) for c in odd] == ["12A1", "8A1+D4", "6A1+D6", "5A1+E7"],
        "even_list": [str(c) for c in even] == ["3D4", "D4+D8", "D4+E8", "D12"],
        "evenness_is_half_sum_flag": flags,
        "evenness_is_a_vector_parity": parity,
        "realisation_invariance": invariant,
    }
    return _result(4, "configuration classification", checks,
                   {"odd": [str(c) for c in odd], "even": [str(c) for c in even]})


def rootemb_validation(seed: int = 0) -> dict:
    from .roots import ROOTEMB_TYPES, a_vector, build_root_lattice, orthogonal_root_decomposition

    checks = {}
    for t in ROOTEMB_TYPES:
        lat = build_root_lattice(t)
        rs = orthogonal_root_decomposition(t)
        a = a_vector(t)
        summed = tuple(sum(col) for col in zip(*rs))
        checks[t] = (summed == a and lat.norm(a) == -2 * lat.rank
                     and all(lat.dot(x, y) == (-2 if i == j else 0)
                             for i, x in enumerate(rs) for j, y in enumerate(rs)))
    return _result(5, "root embeddings", checks)


def superlattice_lemmas(seed: int = 0) -> dict:
    from .standard import e2_superlattice_witnesses, m_superlattice_witnesses

    m = m_superlattice_witnesses()
    e = e2_superlattice_witnesses()
    checks = {
        "M_all_classes_have_root": all(v is not None for _, v in m),
        "E2_527_classes": len(e) == 527,
        "E2_all_classes_have_root": all(v is not None for _, v in e),
    }
    return _result(6, "superlattice lemmas", checks,
                   {"M_classes": len(m), "E2_classes": len(e)})


def three_d4_uniqueness(seed: int = 0) -> dict:
    from .configs import embeddings_M_into_3D4

    ec = embeddings_M_into_3D4()
    return _result(7, "3D4 uniqueness", {"one_orbit": ec.image_orbits == 1}, ec.to_json())


def _defect_pairs(seed: int, m: int) -> list[tuple[int, int]]:
    from .discform import PAIRS

    rng = random.Random(f"defect-pairs:{seed}:{m}")
    return [rng.choice(PAIRS) for _ in range(DEFECT_SAMPLES)]


def period_cell(kind: str, m: int, seed: int = 0) -> dict:
    """Sample and check one (kind, degree) cell; stops at the first sample that cannot be drawn."""
    from .periods import (Constraints, SamplerError, etale_equivalence_check, in_M0, in_M1, is_12A1,
                          is_period_point, m_projection_is_rational, nonfree_map_injective, sample_period,
                          tangent_space)

    if kind == "generic":
        cons = [Constraints("generic")] * GENERIC_SAMPLES
    elif kind == "defect":
        cons = [Constraints("defect", p) for p in _defect_pairs(seed, m)]
    else:
        cons = [Constraints("non12a1")] * NON12A1_SAMPLES
    ok = {"sampled": True, "valid": True, "rational_projection": True}
    if kind != "non12a1":
        ok.update({"in_M0": True, "12A1": True, "tangent_dim_2": True, "agree": True})
    if kind == "generic":
        ok.update({"in_M1": True, "nonfree_injective": True})
    if kind == "defect":
        ok.update({"forced_pair_defect": True, "forced_pair_fails_diagonally": True})
    drawn, first_failure = 0, None
    for k, c in enumerate(cons):
        try:
            v = sample_period(seed * 1000 + k, m, c)
        except SamplerError as exc:
            ok["sampled"] = False
            first_failure = {"sample": k, "error": str(exc)}
            break
        drawn += 1
        ok["valid"] &= bool(is_period_point(v))
        ok["rational_projection"] &= m_projection_is_rational(v)
        if kind == "non12a1":
            continue
        ok["in_M0"] &= in_M0(v, find_witness=False).in_m0
        ok["12A1"] &= is_12A1(v)
        t = tangent_space(v)
        ok["tangent_dim_2"] &= t.dim == 2
        et = etale_equivalence_check(v)
        ok["agree"] &= et.agree and et.pairs_agree
        if kind == "generic":
            ok["in_M1"] &= in_M1(v).in_m1
            ok["nonfree_injective"] &= nonfree_map_injective(v, t).injective
        else:
            nf = nonfree_map_injective(v, t)
            ok["forced_pair_defect"] &= c.pair in in_M1(v).defects
            ok["forced_pair_fails_diagonally"] &= c.pair in nf.failing and nf.diagonal[c.pair]
    return {"kind": kind, "degree": m, "requested": len(cons), "drawn": drawn, "checks": ok,
            "first_failure": first_failure}


def period_equivalence(seed: int = 0) -> dict:
    cells = [period_cell(kind, m, seed) for m in PERIOD_DEGREES
             for kind in ("generic", "defect", "non12a1")]
    checks = {f"{c['kind']}_m{c['degree']}": all(c["checks"].values()) for c in cells}
    return _result(8, "12A1 equivalence", checks, {"cells": cells})


def census_criterion(seed: int = 0, cache: str | None = None) -> dict:
    from .census import census, run_census

    data = census(cache)
    s = data["summary"]
    r = run_census(relabel=RELABEL, verify=False).summary
    checks = {
        "class_count_171": s["class_count"] == 171,
        "orders_divide_maximal": s["all_orders_divide_maximal"],
        "maximal_matches_sigma_up_to_third": sorted(x for x in s["maximal_orders"] if x not in (30, 60))
        == [9, 40, 56, 128, 192] and s["third_entry"] in (30, 60),
        "relabel_invariance": (r["class_count"], r["order_histogram"], r["maximal_orders"])
        == (s["class_count"], s["order_histogram"], s["maximal_orders"]),
    }
    return _result(9, "subgroup census", checks,
                   {"maximal_orders": s["maximal_orders"], "third_entry": s["third_entry"],
                    "class_count_without_trivial": s["class_count_without_trivial"]})


SUITES: list[tuple[int, Callable[..., dict]]] = [
    (1, weight_calculus), (2, lattice_constants), (3, two_elementary_types),
    (4, configuration_classification), (5, rootemb_validation), (6, superlattice_lemmas),
    (7, three_d4_uniqueness), (8, period_equivalence),
]


def run_all(quick: bool = False, seed: int = 0, cache: str | None = None) -> list[dict]:
    """Criteria 1 to 9 in order; ``quick`` skips the census."""
    out = [fn(seed) for _, fn in SUITES]
    if not quick:
        out.append(census_criterion(seed, cache))
    return out
