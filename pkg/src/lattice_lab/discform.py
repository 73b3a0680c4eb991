"""Quadratic spaces over F2, the space N0 = 2N^v/2N, and scalar extension.

Vectors of an :class:`F2QuadraticSpace` are coordinate tuples in its basis.
Over F2 the entries are 0/1; over GF(2^m) they are field elements (ints), and
the same formulas give the scalar-extended form.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .gf2m import ExtensionField, FieldError, Subspace, gf, nullspace, rank, rref, solve_linear
from .lattice import GramLattice, LatticeError, discriminant_group
from .standard import m_coords_from_e, n_lattice

F2 = gf(1)


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class F2QuadraticSpace:
    dim: int
    bilinear: tuple[tuple[int, ...], ...]
    q_values: tuple[int, ...]

    def __post_init__(self):
        b = self.bilinear
        if len(b) != self.dim or any(len(r) != self.dim for r in b) or len(self.q_values) != self.dim:
            raise FormError("shape mismatch")
        for i in range(self.dim):
            if b[i][i]:
                raise FormError("bilinear form must be alternating")
            for j in range(self.dim):
                if b[i][j] != b[j][i] or b[i][j] not in (0, 1):
                    raise FormError("bilinear form must be a symmetric 0/1 matrix")

    @property
    def is_nondegenerate(self) -> bool:
        return rank(F2, self.bilinear) == self.dim

    def q(self, v: Sequence[int], F: ExtensionField = F2) -> int:
        """q(sum v_i x_i) = sum v_i^2 q(x_i) + sum_{i<j} v_i v_j b(x_i, x_j)."""
        s = 0
        nz = [i for i, x in enumerate(v) if x]
        for a, i in enumerate(nz):
            vi = v[i]
            if self.q_values[i]:
                s ^= F.mul(vi, vi)
            for j in nz[a + 1:]:
                if self.bilinear[i][j]:
                    s ^= F.mul(vi, v[j])
        return s

    def b(self, v: Sequence[int], w: Sequence[int], F: ExtensionField = F2) -> int:
        s = 0
        for i, x in enumerate(v):
            if not x:
                continue
            row = self.bilinear[i]
            for j, y in enumerate(w):
                if y and row[j]:
                    s ^= F.mul(x, y)
        return s

    def is_totally_isotropic(self, rows: Sequence[Sequence[int]], F: ExtensionField = F2) -> bool:
        """q vanishes on the span: q on each row and b on each pair."""
        return all(self.q(r, F) == 0 for r in rows) and all(
            self.b(r, s, F) == 0 for r, s in itertools.combinations(rows, 2))

    def orthogonal(self, rows: Sequence[Sequence[int]], F: ExtensionField = F2) -> Subspace:
        """{x : b(x, r) = 0 for every r}."""
        eqs = [[self.b([int(i == j) for j in range(self.dim)], r, F) for i in range(self.dim)]
               for r in rows]
        basis = nullspace(F, eqs, self.dim) if eqs else \
            [[int(i == j) for j in range(self.dim)] for i in range(self.dim)]
        return Subspace.span(F, basis, self.dim)

    def restricted(self, rows: Sequence[Sequence[int]]) -> F2QuadraticSpace:
        """The form on the F2-span of ``rows`` in the basis ``rows``."""
        n = len(rows)
        return F2QuadraticSpace(n, tuple(tuple(self.b(rows[i], rows[j]) for j in range(n)) for i in range(n)),
                                tuple(self.q(r) for r in rows))

    def to_json(self) -> dict:
        return {"dim": self.dim, "bilinear": [list(r) for r in self.bilinear], "q_values": list(self.q_values)}


def hyperbolic_plane() -> F2QuadraticSpace:
    return F2QuadraticSpace(2, ((0, 1), (1, 0)), (0, 0))


def anisotropic_plane() -> F2QuadraticSpace:
    return F2QuadraticSpace(2, ((0, 1), (1, 0)), (1, 1))


def orthogonal_sum(*spaces: F2QuadraticSpace) -> F2QuadraticSpace:
    n = sum(s.dim for s in spaces)
    b = [[0] * n for _ in range(n)]
    q: list[int] = []
    off = 0
    for s in spaces:
        for i in range(s.dim):
            b[off + i][off:off + s.dim] = s.bilinear[i]
        q += s.q_values
        off += s.dim
    return F2QuadraticSpace(n, tuple(map(tuple, b)), tuple(q))


# --------------------------------------------------------------------------
# symplectic reduction, Arf and Witt index


def _units(n: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def _add(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(a ^ b for a, b in zip(u, v))


def _scale(c: int, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(x if c else 0 for x in v)


def normal_symplectic_basis(space: F2QuadraticSpace, vectors: Sequence[Sequence[int]] | None = None,
                            rng: random.Random | None = None) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (e_i, f_i) spanning the nondegenerate span of ``vectors``.

    b(e_i, f_j) = delta_ij and distinct pairs are orthogonal; q(e_i) = q(f_i) = 0
    for every pair except possibly the last, which is anisotropic
    (q = 1 on e, f and e + f) exactly when the Arf invariant is 1.
    ``rng`` randomises the choice of pairs; without it the choice is greedy.
    """
    rest = [tuple(v) for v in (vectors if vectors is not None else _units(space.dim))]
    rest = [tuple(r) for r in rref(F2, rest)[0]]
    pairs = []
    while rest:
        if len(rest) % 2:
            raise FormError("odd-dimensional span cannot be nondegenerate")
        x = _pick_isotropic(space, rest, rng) if len(rest) > 2 else None
        if x is None:
            x = rest[0]
        y = next((r for r in rest if space.b(x, r)), None)
        if y is None:
            cands = [_combo(rest, bits) for bits in itertools.product((0, 1), repeat=len(rest))]
            y = next((c for c in cands if space.b(x, c)), None)
            if y is None:
                raise FormError("degenerate span")
        if space.q(x) == 0 and space.q(y):
            y = _add(y, x)
        elif space.q(x) and space.q(y) == 0:
            x, y = y, x
        pairs.append((x, y))
        nxt = []
        for z in rest:
            z2 = _add(z, _add(_scale(space.b(z, y), x), _scale(space.b(z, x), y)))
            nxt.append(z2)
        rest = [tuple(r) for r in rref(F2, nxt)[0]]
    # keep any anisotropic pair last
    aniso = [p for p in pairs if space.q(p[0])]
    if len(aniso) > 1:
        raise AssertionError("more than one anisotropic pair after reduction")
    return [p for p in pairs if not space.q(p[0])] + aniso


def _combo(basis: Sequence[Sequence[int]], bits: Sequence[int]) -> tuple[int, ...]:
    out = tuple(0 for _ in basis[0])
    for c, v in zip(bits, basis):
        if c:
            out = _add(out, v)
    return out


def _pick_isotropic(space: F2QuadraticSpace, basis: list[tuple[int, ...]],
                    rng: random.Random | None) -> tuple[int, ...] | None:
    n = len(basis)
    if rng is None:
        for bits in itertools.product((0, 1), repeat=n):
            if any(bits):
                v = _combo(basis, bits[::-1])
                if space.q(v) == 0:
                    return v
        return None
    for _ in range(200):
        bits = [rng.randrange(2) for _ in range(n)]
        if any(bits):
            v = _combo(basis, bits)
            if space.q(v) == 0:
                return v
    return _pick_isotropic(space, basis, None)


def arf_and_witt(space: F2QuadraticSpace) -> tuple[int, int]:
    """(Arf invariant, Witt index) of a nondegenerate space."""
    if not space.is_nondegenerate:
        raise FormError("Arf invariant needs a nondegenerate space")
    pairs = normal_symplectic_basis(space)
    arf = 0
    for e, f in pairs:
        arf ^= space.q(e) & space.q(f)
    return arf, space.dim // 2 - arf


def count_singular(space: F2QuadraticSpace) -> int:
    """Number of nonzero x with q(x) = 0 (brute force, small dims)."""
    return sum(1 for v in itertools.product((0, 1), repeat=space.dim) if any(v) and space.q(v) == 0)


# --------------------------------------------------------------------------
# the discriminant space N0


M_PART = tuple(range(10))
E_PART = tuple(range(10, 20))
PAIRS = tuple(itertools.combinations(range(1, 13), 2))


def m_part_coords(a: Sequence[int]) -> tuple[int, ...]:
    """N0 coordinates of the class of sum a_i e_i (a in F2^12 of even weight).

    The M-part basis is e_{k,12} (k = 1..10); the all-ones vector lies in 2M.
    """
    if sum(a) % 2:
        raise FormError("odd-weight vector is not in 2M^v")
    c = [(a[k] + a[10]) % 2 for k in range(10)]
    return tuple(c) + (0,) * 10


def e_ij(i: int, j: int) -> tuple[int, ...]:
    a = [0] * 12
    a[i - 1] = a[j - 1] = 1
    return m_part_coords(a)


@dataclass(frozen=True)
class DiscriminantSpace:
    space: F2QuadraticSpace
    lifts: tuple[tuple[int, ...], ...]  # integral lifts in 2N^v, N-basis coordinates
    e_ij_vectors: dict = field(compare=False)

    @property
    def m_part(self) -> tuple[int, ...]:
        return M_PART

    @property
    def e_part(self) -> tuple[int, ...]:
        return E_PART

    def lift(self, v: Sequence[int]) -> tuple[int, ...]:
        """An integral lift in 2N^v of the F2 class v."""
        out = [0] * len(self.lifts[0])
        for c, l in zip(v, self.lifts):
            if c % 2:
                out = [a + b for a, b in zip(out, l)]
        return tuple(out)


def _structured_lifts() -> list[tuple[int, ...]]:
    lifts = []
    for k in range(10):
        a = [0] * 12
        a[k] = a[11] = 1
        lifts.append(tuple(int(x) for x in m_coords_from_e(a)) + (0,) * 10)
    for k in range(10):
        lifts.append((0,) * 12 + tuple(int(k == j) for j in range(10)))
    return lifts


@lru_cache(maxsize=None)
def discriminant_space(lat: GramLattice | None = None) -> DiscriminantSpace:
    """N0 = 2N^v/2N with q = x^2/4 and b = x.y/2 (mod 2)."""
    lat = lat or n_lattice()
    if lat.rank != 22:
        raise LatticeError("expected the rank-22 lattice M + E(2)")
    dg = discriminant_group(lat)
    if any(d != 2 for d in dg.elementary_divisors):
        raise LatticeError("lattice is not 2-elementary")
    snf_lifts = [tuple(2 * x for x in g.fractions()) for g in dg.generators]
    for i, x in enumerate(snf_lifts):
        if lat.norm(x) % 4:
            raise LatticeError("x^2 is not divisible by 4 on 2N^v")
        for y in snf_lifts[i + 1:]:
            if lat.dot(x, y) % 2:
                raise LatticeError("x.y is odd on 2N^v")
    snf_mod2 = [[int(c) % 2 for c in x] for x in snf_lifts]
    lifts = _structured_lifts()
    mod2 = [[c % 2 for c in x] for x in lifts]
    if rank(F2, snf_mod2) != 20 or rank(F2, snf_mod2 + mod2) != 20 or rank(F2, mod2) != 20:
        raise AssertionError("structured basis does not match 2N^v/2N")
    n = len(lifts)
    bil = tuple(tuple((lat.dot(lifts[i], lifts[j]) // 2) % 2 for j in range(n)) for i in range(n))
    qv = tuple((lat.norm(x) // 4) % 2 for x in lifts)
    space = F2QuadraticSpace(n, bil, qv)
    eij = {p: e_ij(*p) for p in PAIRS}
    return DiscriminantSpace(space, tuple(lifts), eij)


# --------------------------------------------------------------------------
# scalar extension


@dataclass(frozen=True)
class ExtendedSpace:
    base: F2QuadraticSpace
    field: ExtensionField

    @property
    def dim(self) -> int:
        return self.base.dim

    def q(self, v: Sequence[int]) -> int:
        return self.base.q(v, self.field)

    def b(self, v: Sequence[int], w: Sequence[int]) -> int:
        return self.base.b(v, w, self.field)


def extend_scalars(space: F2QuadraticSpace, F: ExtensionField) -> ExtendedSpace:
    return ExtendedSpace(space, F)


def frobenius(s: Subspace) -> Subspace:
    return s.frobenius()


# --------------------------------------------------------------------------
# working space: coordinates e_1..e_12 of M'/2M' followed by E/2E


WORKING_DIM = 22
ONES = (1,) * 12 + (0,) * 10


def working_section(v: Sequence[int]) -> tuple[int, ...]:
    """Image of an N0 vector with e_{k,12} -> e_k + e_12 (a linear section)."""
    c = list(v[:10])
    last = 0
    for x in c:
        last ^= x
    return tuple(c) + (0, last) + tuple(v[10:])


def lift_to_working(s: Subspace) -> Subspace:
    """Preimage in the working space of a subspace of N0 (x) k.

    N0's M-part is (even-weight vectors)/(all-ones), so the preimage is the
    section image plus the all-ones line.
    """
    if s.ambient_dim != 20:
        raise FieldError("expected a subspace of N0")
    rows = [working_section(r) for r in s.rows] + [ONES]
    return Subspace.span(s.field, rows, WORKING_DIM)


def working_m_prime(F: ExtensionField) -> Subspace:
    return Subspace.span(F, [[int(i == j) for j in range(WORKING_DIM)] for i in range(12)], WORKING_DIM)


def working_to_n0(w: Sequence[int]) -> tuple[int, ...]:
    """Inverse of the section modulo the all-ones line (weight must be even over F2)."""
    a11 = w[10]
    return tuple(w[k] ^ a11 for k in range(10)) + tuple(w[12:])


# --------------------------------------------------------------------------
# Witt extension


def witt_extend(partial: Sequence[tuple[Sequence[int], Sequence[int]]], space: F2QuadraticSpace,
                F: ExtensionField = F2, seed: int = 0, budget: int = 2000) -> list[list[int]]:
    """A matrix A (acting on column vectors) with A x = y for each pair, preserving q.

    Extends the partial isometry one basis vector at a time, solving the
    linear b-conditions and then the quadratic q-condition along a random
    line of solutions.
    """
    rng = random.Random(seed)
    n = space.dim
    xs = [list(x) for x, _ in partial]
    ys = [list(y) for _, y in partial]
    if rank(F, xs) != len(xs) if xs else False:
        raise FormError("partial map domain is not independent")
    for (x, y) in zip(xs, ys):
        if space.q(x, F) != space.q(y, F):
            raise FormError("partial map does not preserve q")
    for a, b in itertools.combinations(range(len(xs)), 2):
        if space.b(xs[a], xs[b], F) != space.b(ys[a], ys[b], F):
            raise FormError("partial map does not preserve b")
    if xs and rank(F, ys) != len(ys):
        raise FormError("partial map is not injective")
    for u in _units(n):
        if rank(F, xs + [list(u)]) == len(xs) + 1:
            x_new = list(u)
        else:
            continue
        y_new = _extend_one(space, F, xs, ys, x_new, rng, budget)
        xs.append(x_new)
        ys.append(y_new)
    # A X = Y with the x's as columns: solve row by row, A^T = X^{-T} Y^T
    a_rows = []
    for r in range(n):
        sol = solve_linear(F, xs, [y[r] for y in ys], n)
        if sol is None:
            raise AssertionError("basis is singular")
        a_rows.append(sol)
    _check_isometry(space, F, a_rows)
    return a_rows


def _extend_one(space, F, xs, ys, x_new, rng, budget):
    n = space.dim
    eqs = [[space.b([int(i == j) for j in range(n)], y, F) for i in range(n)] for y in ys]
    rhs = [space.b(x_new, x, F) for x in xs]
    y0 = solve_linear(F, eqs, rhs, n) if eqs else [0] * n
    if y0 is None:
        raise FormError("linear conditions for the extension are inconsistent")
    kern = nullspace(F, eqs, n) if eqs else [list(u) for u in _units(n)]
    target = space.q(x_new, F)
    for _ in range(budget):
        z = list(y0)
        for k in kern:
            c = rng.randrange(F.size)
            if c:
                z = [a ^ F.mul(c, b) for a, b in zip(z, k)]
        w = [0] * n
        for k in kern:
            c = rng.randrange(F.size)
            if c:
                w = [a ^ F.mul(c, b) for a, b in zip(w, k)]
        # q(z + t w) = q(z) + t b(z, w) + t^2 q(w)
        roots = F.solve_quadratic(space.q(w, F), space.b(z, w, F), space.q(z, F) ^ target)
        rng.shuffle(roots)
        for t in roots[:4]:
            y = [a ^ F.mul(t, b) for a, b in zip(z, w)]
            if rank(F, ys + [y]) == len(ys) + 1:
                return y
    raise FormError("Witt extension budget exhausted")


def _check_isometry(space: F2QuadraticSpace, F: ExtensionField, a_rows: list[list[int]]) -> None:
    n = space.dim
    cols = [[a_rows[r][c] for r in range(n)] for c in range(n)]
    for i in range(n):
        if space.q(cols[i], F) != space.q_values[i]:
            raise AssertionError("extension does not preserve q")
        for j in range(i + 1, n):
            if space.b(cols[i], cols[j], F) != space.bilinear[i][j]:
                raise AssertionError("extension does not preserve b")


def apply_matrix(F: ExtensionField, a_rows: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    out = []
    for row in a_rows:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s ^= F.mul(a, b)
        out.append(s)
    return out
