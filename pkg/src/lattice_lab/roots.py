"""Dynkin diagrams, the labelled E10 diagram, fundamental weights and A-vectors."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import GramLattice, LatticeError, roots, solve_rational

# E10 = T_{2,3,7}; alpha_4 is the branch node carrying the short leg alpha_3.
E10_EDGES = ((1, 2), (2, 4), (4, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10))


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        ok = {
            "A": self.rank >= 1,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
            "E10": self.rank == 10,
        }.get(self.family, False)
        if not ok:
            raise LatticeError(f"illegal Dynkin type {self.family}{self.rank}")

    @classmethod
    def parse(cls, name: str) -> DynkinType:
        name = name.strip()
        if name == "E10":
            return cls("E10", 10)
        return cls(name[0], int(name[1:]))

    def __str__(self) -> str:
        return "E10" if self.family == "E10" else f"{self.family}{self.rank}"


def diagram_edges(t: DynkinType) -> tuple[tuple[int, int], ...]:
    """Edges of the labelled diagram, nodes numbered from 1.

    D_n: chain 1..n-1 with node n attached to node n-2.  E_n: 1-2-3 with the
    short leg 3-4 and the long leg 3-5-...-n, matching the A-vector tables.
    """
    n = t.rank
    if t.family == "A":
        return tuple((i, i + 1) for i in range(1, n))
    if t.family == "D":
        return tuple((i, i + 1) for i in range(1, n - 1)) + ((n - 2, n),)
    if t.family == "E":
        return ((1, 2), (2, 3), (3, 4), (3, 5)) + tuple((i, i + 1) for i in range(5, n))
    return E10_EDGES


def build_root_lattice(t: DynkinType | str) -> GramLattice:
    if isinstance(t, str):
        t = DynkinType.parse(t)
    n = t.rank
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in diagram_edges(t):
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    return GramLattice.from_rows(g, str(t))


def e10() -> GramLattice:
    return build_root_lattice(DynkinType("E10", 10))


@lru_cache(maxsize=None)
def fundamental_weights() -> tuple[tuple[int, ...], ...]:
    """varpi_1..varpi_10 in simple-root coordinates, solving varpi_i . alpha_j = delta_ij."""
    lat = e10()
    out = []
    for i in range(10):
        sol = solve_rational(lat.gram, [int(i == j) for j in range(10)])
        if any(x.denominator != 1 for x in sol):
            raise LatticeError(f"weight {i + 1} is not integral; adjacency is wrong")
        out.append(tuple(int(x) for x in sol))
    return tuple(out)


def weight_pairings() -> list[list[int]]:
    lat = e10()
    w = fundamental_weights()
    return [[lat.dot(a, b) for b in w] for a in w]


def weight_norm_table() -> dict[int, int]:
    p = weight_pairings()
    return {i + 1: p[i][i] for i in range(10)}


def enumerate_dominant_norm4(norm: int = 4) -> list[tuple[int, ...]]:
    """All n >= 0 with (sum n_i varpi_i)^2 == norm, as n-coefficient tuples.

    Uses that all weight pairings are nonnegative, so H^2 >= n_i^2 varpi_i^2
    for each i and the cross terms only grow.
    """
    p = weight_pairings()
    if any(x < 0 for row in p for x in row):
        raise LatticeError("weight pairings are not all nonnegative")
    diag = [p[i][i] for i in range(10)]
    bounded = [i for i in range(10) if diag[i] > 0]
    isotropic = [i for i in range(10) if diag[i] == 0]
    if len(isotropic) > 1:
        raise LatticeError("more than one isotropic weight; search is unbounded")
    ranges = [range(math.isqrt(norm // diag[i]) + 1) if diag[i] <= norm else range(1) for i in bounded]
    out = []
    for combo in itertools.product(*ranges):
        n = [0] * 10
        for i, c in zip(bounded, combo):
            n[i] = c
        base = sum(n[i] * n[j] * p[i][j] for i in range(10) for j in range(10))
        if base > norm:
            continue
        if not isotropic:
            if base == norm:
                out.append(tuple(n))
            continue
        k = isotropic[0]
        lin = 2 * sum(n[j] * p[j][k] for j in range(10))
        if lin == 0:
            if base == norm:
                raise LatticeError("infinitely many solutions along an isotropic weight")
            continue
        if (norm - base) % lin == 0:
            n[k] = (norm - base) // lin
            out.append(tuple(n))
    return sorted(out)


def weight_vector(n: tuple[int, ...]) -> tuple[int, ...]:
    w = fundamental_weights()
    return tuple(sum(c * w[i][j] for i, c in enumerate(n)) for j in range(10))


# --------------------------------------------------------------------------
# A-vectors


ROOTEMB_TYPES = ("A1", "D4", "D6", "D8", "D10", "D12", "E7", "E8")


def a_vector(t: DynkinType | str) -> tuple[int, ...]:
    """Sum of the positive roots of the orthogonal A1^rank realisation."""
    if isinstance(t, str):
        t = DynkinType.parse(t)
    if t == DynkinType("A", 1):
        return (1,)
    if t == DynkinType("E", 7):
        return (2, 6, 8, 5, 7, 4, 3)
    if t == DynkinType("E", 8):
        return (4, 10, 14, 8, 12, 8, 6, 2)
    if t.family == "D" and t.rank % 2 == 0:
        n = t.rank // 2
        chain = [c for k in range(1, n) for c in (2 * k, 2 * k)]
        return tuple(chain + [n, n])
    raise LatticeError(f"no A-vector for type {t}")


def is_even_in_lattice(t: DynkinType | str) -> bool:
    return all(c % 2 == 0 for c in a_vector(t))


@lru_cache(maxsize=None)
def _roots_of(name: str) -> tuple[tuple[int, ...], ...]:
    return tuple(roots(build_root_lattice(name)))


def orthogonal_root_decomposition(t: DynkinType | str, order: str = "desc",
                                  seed: int = 0) -> list[tuple[int, ...]]:
    """rank(t) pairwise orthogonal roots summing to ``a_vector(t)``.

    ``order`` picks the backtracking order over the root list: ``"desc"`` (by
    coefficient sum, descending), ``"asc"``, or ``"shuffle"`` (seeded).
    """
    if isinstance(t, str):
        t = DynkinType.parse(t)
    lat = build_root_lattice(t)
    target = a_vector(t)
    rs = list(_roots_of(str(t)))
    if order == "desc":
        rs.sort(key=lambda r: (-sum(r), r))
    elif order == "asc":
        rs.sort(key=lambda r: (sum(r), r))
    elif order == "shuffle":
        random.Random(seed).shuffle(rs)
    else:
        raise ValueError(order)
    n = t.rank
    chosen: list[tuple[int, ...]] = []

    def rec(start: int, rem: tuple[int, ...]) -> bool:
        left = n - len(chosen)
        if left == 0:
            return not any(rem)
        # the remaining roots are orthogonal, so rem^2 = -2*left and r.rem = -2
        if lat.norm(rem) != -2 * left:
            return False
        for k in range(start, len(rs)):
            r = rs[k]
            if lat.dot(r, rem) != -2 or any(lat.dot(r, c) for c in chosen):
                continue
            chosen.append(r)
            if rec(k + 1, tuple(a - b for a, b in zip(rem, r))):
                return True
            chosen.pop()
        return False

    if not rec(0, target):
        raise LatticeError(f"no orthogonal root decomposition for {t}")
    return list(chosen)


# --------------------------------------------------------------------------
# wall dichotomy


def good_subchamber_cases(max_norm: int = 2) -> set[tuple[Fraction, Fraction]]:
    """Pairs (delta1^2, delta2^2) allowed for a wall delta = delta1 + delta2.

    delta1 ranges over M^v, delta2 over E(2)^v minus 0, with
    delta1^2 + delta2^2 = -2, delta1^2 <= 0 < -delta2^2 and delta2^2 integral.
    Each norm must actually be represented by the respective dual lattice.
    """
    from .standard import dual_norm_represented, e2_dual, m_dual

    md, ed = m_dual(), e2_dual()
    out = set()
    for k in range(0, 2 * max_norm + 1):
        d1 = Fraction(-k, 2)
        d2 = -2 - d1
        if d2 >= 0 or d2.denominator != 1:
            continue
        if d1 != 0 and not dual_norm_represented(md, d1):
            continue
        if not dual_norm_represented(ed, d2):
            continue
        out.add((d1, d2))
    return out
