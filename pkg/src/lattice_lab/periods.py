"""Period points in N0 (x) k, the loci M0 and M1, and the tangent-space test.

A period point is a 10-dimensional subspace V of N0 (x) k on which q vanishes,
with dim(V cap F V) = 9 for the Frobenius F.  The sampler builds such V
directly: a random F2-rational isotropic R, a complement W of R in R^perp,
and a model of W (x) k in which the non-rational part of V is explicit.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .discform import (E_PART, M_PART, PAIRS, WORKING_DIM, F2, F2QuadraticSpace, arf_and_witt,
                       discriminant_space, lift_to_working, normal_symplectic_basis, working_m_prime)
from .gf2m import ExtensionField, FieldError, Subspace, gf, rank, rational_part, solve_linear
from .lattice import GramLattice, RationalVector, is_two_elementary, overlattice
from .standard import e_norm_minus4, n_lattice

AMBIENT = 20
SIGMA = 10
DEFAULT_BUDGET = 10_000


class PeriodError(ValueError):
    pass


class SamplerError(RuntimeError):
    def __init__(self, message: str, stats: dict):
        super().__init__(f"{message}; stats={json.dumps(stats, sort_keys=True)}")
        self.stats = stats


def _space() -> F2QuadraticSpace:
    return discriminant_space().space


def _unit(i: int, n: int = AMBIENT) -> tuple[int, ...]:
    return tuple(int(i == j) for j in range(n))


def m_part_space(F: ExtensionField) -> Subspace:
    return Subspace.span(F, [_unit(i) for i in M_PART], AMBIENT)


def e_part_space(F: ExtensionField) -> Subspace:
    return Subspace.span(F, [_unit(i) for i in E_PART], AMBIENT)


@dataclass(frozen=True)
class PeriodPoint:
    subspace: Subspace

    @property
    def field(self) -> ExtensionField:
        return self.subspace.field

    @cached_property
    def overlap_dim(self) -> int:
        return self.subspace.intersect(self.subspace.frobenius()).dim

    @cached_property
    def rational(self) -> Subspace:
        return rational_part(self.subspace)

    @property
    def rational_dim(self) -> int:
        return self.rational.dim

    def to_json(self) -> dict:
        return self.subspace.to_json()

    @classmethod
    def from_json(cls, data: dict) -> PeriodPoint:
        return cls(Subspace.from_json(data))


@dataclass
class PeriodCheck:
    valid: bool
    reason: str
    dim: int
    overlap_dim: int | None = None

    def __bool__(self) -> bool:
        return self.valid


def is_period_point(s: Subspace | PeriodPoint) -> PeriodCheck:
    """dim 10, q identically zero, dim(V cap F V) = 9; names the first failure."""
    sub = s.subspace if isinstance(s, PeriodPoint) else s
    if sub.ambient_dim != AMBIENT:
        raise FieldError(f"ambient dimension must be {AMBIENT}")
    if sub.dim != SIGMA:
        return PeriodCheck(False, "dimension", sub.dim)
    if not _space().is_totally_isotropic(sub.rows, sub.field):
        return PeriodCheck(False, "isotropy", sub.dim)
    ov = sub.intersect(sub.frobenius()).dim
    if ov != SIGMA - 1:
        return PeriodCheck(False, "frobenius", sub.dim, ov)
    return PeriodCheck(True, "ok", sub.dim, ov)


# --------------------------------------------------------------------------
# loci


@dataclass
class M0Report:
    in_m0: bool
    rational_e_class: tuple[int, ...] | None = None
    witness: tuple[int, ...] | None = None  # z in E with z^2 = -4 lifting the class


def in_M0(v: PeriodPoint, find_witness: bool = True) -> M0Report:
    """True iff the rational part of V meets the E-part trivially."""
    R = v.rational
    meet = R.intersect(e_part_space(v.field))
    if meet.dim == 0:
        return M0Report(True)
    cls = tuple(meet.rows[0][i] for i in E_PART)
    wit = e_norm_minus4(cls) if find_witness else None
    return M0Report(False, cls, wit)


def is_12A1(v: PeriodPoint) -> bool:
    return v.subspace.project(M_PART).dim == len(M_PART)


@dataclass
class M1Report:
    in_m1: bool
    meets_m_part: bool
    defects: list[tuple[int, int]] = field(default_factory=list)


def m1_defects(v: PeriodPoint) -> list[tuple[int, int]]:
    """Pairs (i, j) with alpha + e_ij in V for some F2-rational alpha in the E-part."""
    D = discriminant_space()
    R = v.rational
    rows = [list(r) for r in R.rows] + [list(_unit(i)) for i in E_PART]
    base = rank(F2, rows)
    return [p for p in PAIRS if rank(F2, rows + [list(D.e_ij_vectors[p])]) == base]


def in_M1(v: PeriodPoint) -> M1Report:
    meets = v.subspace.intersect(m_part_space(v.field)).dim > 0
    defects = m1_defects(v)
    return M1Report(not meets and not defects, meets, defects)


@dataclass
class PicardOverlattice:
    lattice: GramLattice
    index: int
    disc: int


def picard_overlattice(v: PeriodPoint) -> PicardOverlattice:
    """N + (1/2)(lifts of the rational part of V)."""
    D = discriminant_space()
    N = n_lattice()
    glue = [RationalVector(D.lift(r), 2) for r in v.rational.rows]
    if not glue:
        return PicardOverlattice(N, 1, abs(N.det))
    lat, _, _ = overlattice(N, glue, "N(V)")
    if not lat.is_even:
        raise AssertionError("overlattice of an isotropic rational part must be even")
    index2 = abs(N.det) // abs(lat.det)
    return PicardOverlattice(lat, int(round(index2 ** 0.5)), abs(lat.det))


def tangent_space(v: PeriodPoint) -> Subspace:
    """(V + F V) cap M' (x) k inside the working space; must be 2-dimensional."""
    chk = is_period_point(v)
    if not chk:
        raise PeriodError(f"not a period point ({chk.reason})")
    if not in_M0(v, find_witness=False).in_m0 or not is_12A1(v):
        raise PeriodError("tangent space needs a 12A1 period in M0")
    F = v.field
    big = lift_to_working(v.subspace + v.subspace.frobenius())
    t = big.intersect(working_m_prime(F))
    if t.dim != 2:
        raise PeriodError(f"tangent space has dimension {t.dim}, expected 2 (sum dim {big.dim})")
    return t


@dataclass
class NonFreeReport:
    injective: bool
    failing: list[tuple[int, int]]
    diagonal: dict[tuple[int, int], bool]
    single_ranks: list[int]


def nonfree_map_injective(v: PeriodPoint, t: Subspace | None = None) -> NonFreeReport:
    t = t if t is not None else tangent_space(v)
    F = t.field
    failing, diag = [], {}
    for i, j in PAIRS:
        img = t.project((i - 1, j - 1))
        if img.dim < 2:
            failing.append((i, j))
            diag[(i, j)] = img == Subspace.span(F, [[1, 1]], 2)
    singles = [t.project((i,)).dim for i in range(12)]
    return NonFreeReport(not failing, failing, diag, singles)


@dataclass
class EtaleReport:
    lhs: bool
    rhs: bool
    agree: bool
    pairs_agree: bool
    failing: list[tuple[int, int]]
    defects: list[tuple[int, int]]


def etale_equivalence_check(v: PeriodPoint) -> EtaleReport:
    nf = nonfree_map_injective(v)
    m1 = in_M1(v)
    return EtaleReport(nf.injective, m1.in_m1, nf.injective == m1.in_m1,
                       nf.failing == m1.defects, nf.failing, m1.defects)


def m_projection_is_rational(v: PeriodPoint) -> bool:
    p = v.subspace.project(M_PART)
    return p.frobenius() == p


def contains_m_complement(v: PeriodPoint) -> bool:
    """V contains the part of the M-part orthogonal to V's M-part image."""
    F = v.field
    S = _space()
    img = [tuple(r) + (0,) * 10 for r in v.subspace.project(M_PART).rows]
    perp = S.orthogonal(img, F).intersect(m_part_space(F))
    return v.subspace.contains_space(perp)


# --------------------------------------------------------------------------
# sampler


@dataclass(frozen=True)
class Constraints:
    """``kind`` is one of generic, defect, non12a1, e_part, free."""
    kind: str = "generic"
    pair: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind not in ("generic", "defect", "non12a1", "e_part", "free"):
            raise ValueError(f"unknown constraint kind {self.kind}")
        if self.kind == "defect":
            if self.pair is None:
                raise ValueError("defect constraint needs a pair")
            i, j = self.pair
            if not (1 <= i < j <= 12):
                raise ValueError("pair must satisfy 1 <= i < j <= 12")


def _vec_add(u, v):
    return tuple(a ^ b for a, b in zip(u, v))


def _span_elements(rows: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out = [(0,) * AMBIENT]
    for r in rows:
        out = out + [_vec_add(x, r) for x in out]
    return out


class _Predicate:
    def __init__(self, c: Constraints, strict: bool):
        D = discriminant_space()
        self.kind = c.kind
        self.eij = {D.e_ij_vectors[p][:10] for p in PAIRS}
        if c.kind == "defect" and strict:
            self.eij.discard(D.e_ij_vectors[c.pair][:10])
        self.avoid_eij = c.kind == "generic" or (c.kind == "defect" and strict)

    def reason(self, v: tuple[int, ...]) -> str | None:
        mu, alpha = v[:10], v[10:]
        if self.kind in ("e_part", "free"):
            return None
        if not any(mu):
            return "rational_e_part"
        if self.kind == "non12a1":
            return None
        if not any(alpha):
            return "rational_m_part"
        if self.avoid_eij and mu in self.eij:
            return "rational_defect"
        return None


def _random_in(rows: Sequence[Sequence[int]], rng: random.Random) -> tuple[int, ...]:
    v = (0,) * AMBIENT
    for r in rows:
        if rng.randrange(2):
            v = _vec_add(v, tuple(r))
    return v


def _seed_vectors(c: Constraints, rng: random.Random) -> list[tuple[int, ...]]:
    S = _space()
    D = discriminant_space()
    if c.kind == "defect":
        while True:
            alpha = (0,) * 10 + tuple(rng.randrange(2) for _ in range(10))
            if any(alpha) and S.q(alpha) == 1:
                return [_vec_add(alpha, D.e_ij_vectors[c.pair])]
    if c.kind == "non12a1":
        from .discform import m_part_coords
        idx = rng.sample(range(12), 4)
        a = [int(i in idx) for i in range(12)]
        return [m_part_coords(a)]
    if c.kind == "e_part":
        while True:
            alpha = (0,) * 10 + tuple(rng.randrange(2) for _ in range(10))
            if any(alpha) and S.q(alpha) == 0:
                return [alpha]
    return []


def _grow_rational(r_dim: int, c: Constraints, pred: _Predicate, rng: random.Random,
                   stats: Counter, attempts: int) -> list[tuple[int, ...]] | None:
    S = _space()
    for _ in range(attempts):
        stats["restarts"] += 1
        rows = _seed_vectors(c, rng)
        if any(pred.reason(r) for r in rows):
            stats["seed_rejected"] += 1
            continue
        stuck = 0
        while len(rows) < r_dim and stuck < 64:
            perp = S.orthogonal(rows).rows
            x = _random_in(perp, rng)
            stats["draws"] += 1
            if S.q(x) or rank(F2, rows + [x]) == len(rows):
                stuck += 1
                continue
            bad = None
            for y in _span_elements(rows):
                bad = pred.reason(_vec_add(x, y))
                if bad:
                    break
            if bad:
                stats[bad] += 1
                stuck += 1
                continue
            rows.append(x)
            stuck = 0
        if len(rows) == r_dim:
            return rows
        stats["stuck"] += 1
    return None


def _model_space(F: ExtensionField) -> F2QuadraticSpace:
    """k = GF(2^2s) over F2 with q(x) = Tr_{GF(2^s)/F2}(x^(2^s + 1))."""
    m = F.degree
    s = m // 2

    def q(x: int) -> int:
        y = F.pow(x, (1 << s) + 1)
        t = 0
        for _ in range(s):
            t ^= y
            y = F.square(y)
        if t not in (0, 1):
            raise AssertionError("norm trace is not in F2")
        return t

    qv = tuple(q(1 << t) for t in range(m))
    b = tuple(tuple(0 if i == j else q((1 << i) ^ (1 << j)) ^ qv[i] ^ qv[j] for j in range(m))
              for i in range(m))
    return F2QuadraticSpace(m, b, qv)


def _model_isotropic(F: ExtensionField) -> list[list[int]]:
    """Rows (in the F2 bit basis of k, coefficients in k) spanning the model V'.

    In the coordinates y_j = sum_t (beta_t)^(2^j) c_t the Frobenius is a shift
    and q pairs y_j with y_{j+s}; V' is the span of the first s unit vectors.
    """
    m = F.degree
    s = m // 2
    moore = [[F.frob(1 << t, j) for t in range(m)] for j in range(m)]
    out = []
    for j in range(s):
        c = solve_linear(F, moore, [int(i == j) for i in range(m)], m)
        if c is None:
            raise AssertionError("Moore matrix is singular")
        out.append(c)
    return out


def _isometry_matrix(src: F2QuadraticSpace, dst_space: F2QuadraticSpace, dst_rows: list[tuple[int, ...]],
                     rng: random.Random) -> list[tuple[int, ...]]:
    """Images in N0 of the unit vectors of ``src`` under an isometry onto span(dst_rows)."""
    ps = normal_symplectic_basis(src, rng=rng)
    pd = normal_symplectic_basis(dst_space, dst_rows, rng=rng)
    if len(ps) != len(pd) or src.q(ps[-1][0]) != dst_space.q(pd[-1][0]):
        raise AssertionError("model and complement have different Arf invariants")
    basis = [v for p in ps for v in p]
    images = [v for p in pd for v in p]
    out = []
    for t in range(src.dim):
        coeffs = solve_linear(F2, [[b[i] for b in basis] for i in range(src.dim)],
                              [int(i == t) for i in range(src.dim)], src.dim)
        img = (0,) * AMBIENT
        for c, y in zip(coeffs, images):
            if c:
                img = _vec_add(img, y)
        out.append(img)
    return out


def _build(F: ExtensionField, R: list[tuple[int, ...]], rng: random.Random) -> Subspace:
    S = _space()
    perp = list(S.orthogonal(R).rows)
    W: list[tuple[int, ...]] = []
    while len(R) + len(W) < len(perp):
        x = _random_in(perp, rng)
        if rank(F2, R + W + [x]) == len(R) + len(W) + 1:
            W.append(x)
    model = _model_space(F)
    psi = _isometry_matrix(model, S, W, rng)
    rows = [list(r) for r in R]
    for c in _model_isotropic(F):
        v = [0] * AMBIENT
        for ct, img in zip(c, psi):
            if ct:
                for i, x in enumerate(img):
                    if x:
                        v[i] ^= ct
        rows.append(v)
    return Subspace.span(F, rows, AMBIENT)


def _satisfies(v: PeriodPoint, c: Constraints) -> str | None:
    chk = is_period_point(v)
    if not chk:
        return f"invalid_{chk.reason}"
    if c.kind == "free":
        return None
    m0 = in_M0(v, find_witness=False).in_m0
    if c.kind == "e_part":
        return None if not m0 else "unexpected_m0"
    if not m0:
        return "not_m0"
    if c.kind == "non12a1":
        return None if not is_12A1(v) else "unexpected_12a1"
    if not is_12A1(v):
        return "not_12a1"
    m1 = in_M1(v)
    if c.kind == "generic":
        return None if m1.in_m1 else "not_m1"
    return None if c.pair in m1.defects else "defect_missing"


def sample_period(seed: int, field: ExtensionField | int = 8, constraints: Constraints | None = None,
                  budget: int = DEFAULT_BUDGET) -> PeriodPoint:
    """A period point over GF(2^m) (m even), deterministic in (seed, m, constraints).

    The rational part has dimension 10 - m/2.  Raises :class:`SamplerError`
    with rejection statistics when the budget of draws is exhausted.
    """
    F = gf(field) if isinstance(field, int) else field
    c = constraints or Constraints()
    if F.degree % 2:
        raise SamplerError("field degree must be even", {"degree": F.degree})
    if F.degree > 2 * SIGMA:
        raise SamplerError("field degree too large", {"degree": F.degree})
    rng = random.Random(f"period:{seed}:{F.degree}:{c.kind}:{c.pair}")
    r_dim = SIGMA - F.degree // 2
    stats: Counter = Counter()
    strict = True
    while stats["draws"] + stats["restarts"] < budget:
        pred = _Predicate(c, strict)
        R = _grow_rational(r_dim, c, pred, rng, stats, attempts=8)
        if R is None:
            if c.kind == "defect" and strict and stats["restarts"] >= 4:
                strict = False  # allow further rational defects beside the forced one
            continue
        v = PeriodPoint(_build(F, R, rng))
        bad = _satisfies(v, c)
        if bad is None:
            return v
        stats[bad] += 1
    raise SamplerError(f"no {c.kind} period over GF(2^{F.degree}) within budget {budget}", dict(stats))


def sample_rational_part_dims(m: int) -> int:
    return SIGMA - m // 2


# --------------------------------------------------------------------------
# reports and I/O


def period_report(v: PeriodPoint) -> dict:
    chk = is_period_point(v)
    out = {"valid": chk.valid, "reason": chk.reason, "rational_dim": v.rational_dim if chk.valid else None}
    if not chk.valid:
        return out
    m0 = in_M0(v)
    out["in_M0"] = m0.in_m0
    out["is_12A1"] = is_12A1(v) if m0.in_m0 else None
    m1 = in_M1(v)
    out["in_M1"] = m1.in_m1
    out["defects"] = [list(p) for p in m1.defects]
    out["m_projection_rational"] = m_projection_is_rational(v)
    if m0.in_m0 and out["is_12A1"]:
        t = tangent_space(v)
        nf = nonfree_map_injective(v, t)
        out["tangent_dim"] = t.dim
        out["etale_lhs"] = nf.injective
        out["etale_rhs"] = m1.in_m1
        out["agree"] = nf.injective == m1.in_m1
        out["failing_pairs"] = [list(p) for p in nf.failing]
    else:
        out.update({"tangent_dim": None, "etale_lhs": None, "etale_rhs": None, "agree": None})
    if m0.witness is not None:
        out["m0_witness"] = list(m0.witness)
    return out


def dump_periods(periods: Sequence[PeriodPoint]) -> str:
    return json.dumps({"periods": [p.to_json() for p in periods]}, sort_keys=True)


def load_periods(text: str) -> list[PeriodPoint]:
    return [PeriodPoint.from_json(d) for d in json.loads(text)["periods"]]
