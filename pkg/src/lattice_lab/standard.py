"""The concrete lattices M, E = E10(-1), E(2), N = M + E(2) and E1."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .lattice import (GramLattice, RationalVector, coset_vectors, direct_sum, find_vector_with_norm,
                      index2_even_glue, solve_rational,
                      overlattice, rescale, scaled_dual)
from .roots import e10

M_RANK = 12


@lru_cache(maxsize=None)
def m_lattice() -> GramLattice:
    """M = sum Z e_i + Z h, h = (1/2) sum e_i, in the basis (e_1, ..., e_11, h)."""
    n = M_RANK
    g = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        g[i][i] = -2
        g[i][n - 1] = g[n - 1][i] = -1
    g[n - 1][n - 1] = -6
    return GramLattice.from_rows(g, "M")


def m_coords_from_e(a: list[int] | tuple[int, ...]) -> list[Fraction]:
    """M-basis coordinates of sum a_i e_i (i = 1..12); may be non-integral."""
    a12 = Fraction(a[11])
    return [Fraction(x) - a12 for x in a[:11]] + [2 * a12]


def e_coords_from_m(c) -> list[Fraction]:
    """Inverse of :func:`m_coords_from_e`."""
    h = Fraction(c[11]) / 2
    return [Fraction(x) + h for x in c[:11]] + [h]


@lru_cache(maxsize=None)
def m_prime() -> GramLattice:
    return GramLattice.from_rows([[-2 * (i == j) for j in range(M_RANK)] for i in range(M_RANK)], "M'")


@lru_cache(maxsize=None)
def e_lattice() -> GramLattice:
    return GramLattice(e10().gram, "E")


@lru_cache(maxsize=None)
def e2_lattice() -> GramLattice:
    return rescale(e_lattice(), 2, "E(2)")


@lru_cache(maxsize=None)
def n_lattice() -> GramLattice:
    return direct_sum(m_lattice(), e2_lattice(), label="N")


# a norm -4 vector of E: alpha_1 + alpha_3 (orthogonal roots)
E1_GLUE = (1, 0, 1, 0, 0, 0, 0, 0, 0, 0)


@lru_cache(maxsize=None)
def e1_lattice() -> GramLattice:
    """E(2) + Z delta where 2 delta in E(2) and delta^2 = -2."""
    lat, _, _ = overlattice(e2_lattice(), [RationalVector(E1_GLUE, 2)], "E1")
    return lat


@lru_cache(maxsize=None)
def m_dual() -> GramLattice:
    return scaled_dual(m_lattice(), 2)


@lru_cache(maxsize=None)
def e2_dual() -> GramLattice:
    return scaled_dual(e2_lattice(), 2)


def dual_norm_represented(scaled: GramLattice, norm: Fraction, scale: int = 2, box_bound: int = 4) -> bool:
    """Whether the dual lattice (stored with form times ``scale``) has a vector of ``norm``."""
    target = Fraction(norm) * scale
    if target.denominator != 1:
        return False
    return find_vector_with_norm(scaled, int(target), box_bound) is not None


def _coset_norm_one(shift: list[Fraction]) -> list[Fraction] | None:
    """Some a in shift + Z^12 with sum a_i^2 == 1."""
    opts = []
    for s in shift:
        base = s - (s.numerator // s.denominator)
        cands = sorted({base - 2, base - 1, base, base + 1}, key=lambda t: (t * t, t))
        opts.append([t for t in cands if t * t <= 1])
    out: list[Fraction] = []

    def rec(i: int, left: Fraction) -> bool:
        if i == len(opts):
            return left == 0
        for t in opts[i]:
            if t * t <= left:
                out.append(t)
                if rec(i + 1, left - t * t):
                    return True
                out.pop()
        return False

    return list(out) if rec(0, Fraction(1)) else None


def m_superlattice_witnesses() -> list[tuple[tuple[int, ...], tuple[Fraction, ...] | None]]:
    """For each even index-2 glue class x of M, a norm -2 vector in x/2 + M (or None).

    Works in e-coordinates, where M = M' + (M' + h) with M' = sum Z e_i.
    """
    lat = m_lattice()
    out = []
    for x in index2_even_glue(lat):
        a = e_coords_from_m([Fraction(c, 2) for c in x])
        hit = None
        for shift in (a, [t + Fraction(1, 2) for t in a]):
            sol = _coset_norm_one(shift)
            if sol is not None:
                hit = tuple(m_coords_from_e(sol))
                break
        if hit is not None:
            diff = [h - Fraction(c, 2) for h, c in zip(hit, x)]
            if any(d.denominator != 1 for d in diff) or lat.norm(hit) != -2:
                raise AssertionError("coset witness is wrong")
        out.append((x, hit))
    return out


def _e_splitting():
    """E = E8 + U: simple roots 1..8 span E8(-1); U is spanned by the projections of alpha_9, alpha_10."""
    E = e_lattice()
    g8 = [row[:8] for row in E.gram[:8]]
    e8 = GramLattice.from_rows(g8, "E8(-1)")

    def split(v):
        w = solve_rational(g8, [E.dot(v, [int(i == j) for i in range(10)]) for j in range(8)])
        return list(w) + [0, 0], [Fraction(x) - (w[i] if i < 8 else 0) for i, x in enumerate(v)]

    us = [split([int(i == k) for i in range(10)])[1] for k in (8, 9)]
    if any(x.denominator != 1 for u in us for x in u):
        raise AssertionError("E8 does not split off E integrally")
    return e8, split, [[int(x) for x in u] for u in us]


def e_norm_minus4(x: tuple[int, ...], bound: int = 8) -> tuple[int, ...] | None:
    """Some z in E with z = x (mod 2E) and z^2 = -4, via z = (E8 part) + (U part)."""
    E = e_lattice()
    e8, split, (u1, u2) = _e_splitting()
    w0, _ = split(list(x))
    cands = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if (a - x[8]) % 2 or (b - x[9]) % 2:
                continue
            u = [a * p + b * q for p, q in zip(u1, u2)]
            nu = E.norm(u)
            if nu >= -4:
                cands.append((nu + 4, abs(a) + abs(b), a, b, u))
    for rest, _, _, _, u in sorted(cands):
        hits = coset_vectors(e8, [w / 2 for w in w0[:8]], Fraction(-rest, 4))
        if hits:
            w = [int(2 * h) for h in min(hits)]
            z = tuple(wi + ui for wi, ui in zip(w + [0, 0], u))
            if E.norm(z) != -4 or any((zi - xi) % 2 for zi, xi in zip(z, x)):
                raise AssertionError("split witness is wrong")
            return z
    return None


def e2_superlattice_witnesses() -> list[tuple[tuple[int, ...], tuple[int, ...] | None]]:
    """For each even index-2 glue class x of E(2), some z in E with z = x (mod 2E) and z^2 = -4.

    Then z/2 lies in E(2) + Z x/2 and has norm 2 * (-4) / 4 = -2 there.
    """
    return [(x, e_norm_minus4(x)) for x in index2_even_glue(e2_lattice())]
