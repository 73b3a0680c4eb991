"""Exact integral lattices given by Gram matrices.

Everything here works over Python integers and ``fractions.Fraction``; no
floating point is used anywhere.  Sign convention: roots have norm -2, so
definite root lattices are negative definite.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

Matrix = list[list[int]]


class LatticeError(ValueError):
    pass


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def smith_normal_form(rows: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Return ``(d, P, Q)`` with ``P A Q = diag(d)``, P and Q unimodular.

    ``d`` is nonnegative and in divisibility order.  Square input only.
    """
    n = len(rows)
    a = [list(r) for r in rows]
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        P[dst] = [x + c * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in Q:
            r[dst] += c * r[src]

    for t in range(n):
        # pivot: smallest nonzero entry in the trailing block
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish_snf(a, P, Q, n)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            done = True
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            P[t] = [-x for x in P[t]]
    return _finish_snf(a, P, Q, n)


def _finish_snf(a, P, Q, n):
    return [a[i][i] for i in range(n)], P, Q


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*m)]


def solve_rational(m: Sequence[Sequence[int]], b: Sequence) -> list[Fraction]:
    """Solve ``m x = b`` exactly for square nonsingular ``m``."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def hermite_basis(generators: Sequence[Sequence[int]], n: int) -> Matrix:
    """Row basis (upper triangular) of the Z-span of integer ``generators``.

    The span must have full rank ``n``.
    """
    rows = [list(g) for g in generators if any(g)]
    basis: Matrix = []
    for col in range(n):
        pool = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(pool) > 1:
            pool.sort(key=lambda r: abs(r[col]))
            piv = pool[0]
            nxt = [piv]
            for r in pool[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            pool = nxt
        if not pool:
            raise LatticeError("generators do not span a full-rank lattice")
        piv = pool[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rows = [r for r in rest if any(r)]
    return basis


@dataclass(frozen=True)
class RationalVector:
    """Rational coordinates in a lattice basis, with explicit common denominator."""

    numerators: tuple[int, ...]
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise LatticeError("denominator must be positive")
        g = math.gcd(self.denominator, *self.numerators) if self.numerators else self.denominator
        if g > 1:
            object.__setattr__(self, "numerators", tuple(x // g for x in self.numerators))
            object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def from_fractions(cls, coords: Sequence[Fraction | int]) -> RationalVector:
        fr = [Fraction(c) for c in coords]
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        return cls(tuple(int(f * den) for f in fr), den)

    def fractions(self) -> list[Fraction]:
        return [Fraction(x, self.denominator) for x in self.numerators]

    def is_integral(self) -> bool:
        return self.denominator == 1

    def __add__(self, other: RationalVector) -> RationalVector:
        return RationalVector.from_fractions([a + b for a, b in zip(self.fractions(), other.fractions())])

    def scaled(self, c: int | Fraction) -> RationalVector:
        return RationalVector.from_fractions([c * f for f in self.fractions()])

    def reduced_mod_lattice(self) -> RationalVector:
        """Representative with every coordinate in [0, 1)."""
        return RationalVector.from_fractions([f - math.floor(f) for f in self.fractions()])


@dataclass(frozen=True)
class GramLattice:
    """A nondegenerate integral lattice given by its symmetric Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(r) != n for r in g):
            raise LatticeError("gram must be a nonempty square matrix")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("gram must be symmetric")
        if self.det == 0:
            raise LatticeError("gram is degenerate")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], label: str = "") -> GramLattice:
        return cls(tuple(tuple(r) for r in rows), label)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return bareiss_det(self.gram)

    @cached_property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def is_negative_definite(self) -> bool:
        # Sylvester: leading minors of -G all positive
        neg = [[-x for x in row] for row in self.gram]
        return all(bareiss_det([r[:k] for r in neg[:k]]) > 0 for k in range(1, self.rank + 1))

    def dot(self, u: Sequence, v: Sequence):
        g = self.gram
        return sum(u[i] * sum(g[i][j] * v[j] for j in range(len(v)) if v[j]) for i in range(len(u)) if u[i])

    def norm(self, v: Sequence):
        return self.dot(v, v)

    def inertia(self) -> tuple[int, int]:
        """(positive, negative) index of inertia via exact LDL^T."""
        d = _ldl_diagonal([[Fraction(x) for x in r] for r in self.gram])
        return sum(1 for x in d if x > 0), sum(1 for x in d if x < 0)

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram], "label": self.label}

    @classmethod
    def from_json(cls, data: dict | str) -> GramLattice:
        if isinstance(data, str):
            data = json.loads(data)
        lat = cls.from_rows(data["gram"], data.get("label", ""))
        if lat.rank != data["rank"]:
            raise LatticeError("rank field disagrees with gram")
        return lat


def _ldl_diagonal(a: list[list[Fraction]]) -> list[Fraction]:
    """Diagonal of a congruence diagonalisation (symmetric pivoting as needed)."""
    a = [row[:] for row in a]
    n = len(a)
    out = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    out.append(Fraction(0))
                    continue
                # e_k += e_j makes the pivot 2 a_kj
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        p = a[k][k]
        out.append(p)
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
    return out


@dataclass(frozen=True)
class DiscriminantGroup:
    elementary_divisors: tuple[int, ...]
    generators: tuple[RationalVector, ...] = field(default=())

    @property
    def order(self) -> int:
        return math.prod(self.elementary_divisors)


def gram_det(lat: GramLattice) -> int:
    return lat.det


def discriminant_group(lat: GramLattice) -> DiscriminantGroup:
    """Elementary divisors of L^v/L with coset generators lifted through the SNF."""
    d, _P, Q = smith_normal_form(lat.gram)
    divs, gens = [], []
    for i, di in enumerate(d):
        if di > 1:
            divs.append(di)
            gens.append(RationalVector(tuple(Q[r][i] for r in range(lat.rank)), di).reduced_mod_lattice())
    return DiscriminantGroup(tuple(divs), tuple(gens))


def is_two_elementary(lat: GramLattice) -> bool:
    return all(x == 2 for x in discriminant_group(lat).elementary_divisors)


def two_elementary_sigma(lat: GramLattice) -> int:
    """Half the F2-dimension of 2L^v/2L for a 2-elementary lattice."""
    divs = discriminant_group(lat).elementary_divisors
    if any(x != 2 for x in divs):
        raise LatticeError("lattice is not 2-elementary")
    return len(divs) // 2


def rescale(lat: GramLattice, n: int, label: str | None = None) -> GramLattice:
    if n == 0:
        raise LatticeError("scale factor must be nonzero")
    return GramLattice.from_rows([[n * x for x in r] for r in lat.gram],
                                 label if label is not None else f"{lat.label}({n})")


def direct_sum(*lats: GramLattice, label: str | None = None) -> GramLattice:
    n = sum(l.rank for l in lats)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for l in lats:
        for i in range(l.rank):
            rows[off + i][off:off + l.rank] = l.gram[i]
        off += l.rank
    return GramLattice.from_rows(rows, label if label is not None else "+".join(l.label for l in lats))


def overlattice(lat: GramLattice, glue: Sequence[RationalVector], label: str = "") -> tuple[GramLattice, Matrix, int]:
    """The lattice ``L + sum Z g``.

    Returns ``(lattice, basis, den)`` where the rows of ``basis / den`` are the
    new basis in the coordinates of ``lat``.  Raises if the result is not
    integral.
    """
    den = math.lcm(1, *(g.denominator for g in glue))
    gens = [[den * int(i == j) for j in range(lat.rank)] for i in range(lat.rank)]
    for g in glue:
        gens.append([x * (den // g.denominator) for x in g.numerators])
    basis = hermite_basis(gens, lat.rank)
    d2 = den * den
    rows = []
    for u in basis:
        row = []
        for v in basis:
            val = lat.dot(u, v)
            if val % d2:
                raise LatticeError("overlattice is not integral")
            row.append(val // d2)
        rows.append(row)
    return GramLattice.from_rows(rows, label), basis, den


# --------------------------------------------------------------------------
# short vectors


def _positive_decomposition(q: Sequence[Sequence[int]]):
    """Q(y) = sum_i d[i] * (y_i + sum_{j>i} mu[i][j] y_j)^2 for positive definite q."""
    n = len(q)
    a = [[Fraction(x) for x in row] for row in q]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise LatticeError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= mu[i][j] * a[i][k]
                a[k][j] = a[j][k]
    return d, mu


def _floor_sqrt(r: Fraction) -> int:
    return math.isqrt(r.numerator * r.denominator) // r.denominator


def fincke_pohst(q: Sequence[Sequence[int]], bound: Fraction | int,
                 shift: Sequence[Fraction] | None = None) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """All integer x with Q(x + shift) <= bound, for positive definite Q.

    Yields ``(x, Q(x + shift))``.  Complete enumeration.
    """
    n = len(q)
    d, mu = _positive_decomposition(q)
    s = [Fraction(v) for v in shift] if shift is not None else [Fraction(0)] * n
    bound = Fraction(bound)
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            yield tuple(x), bound - remaining
            return
        t = s[i] + sum((mu[i][j] * (x[j] + s[j]) for j in range(i + 1, n)), Fraction(0))
        c = -t
        r2 = remaining / d[i]
        w = _floor_sqrt(r2)
        lo = math.floor(c) - w - 1
        hi = math.ceil(c) + w + 1
        for xi in range(lo, hi + 1):
            dev = (xi - c) ** 2
            if dev <= r2:
                x[i] = xi
                yield from rec(i - 1, remaining - d[i] * dev)
        x[i] = 0

    yield from rec(n - 1, bound)


def short_vectors(lat: GramLattice, target_norm: int, box_bound: int = 6,
                  require_complete: bool = False) -> list[tuple[int, ...]]:
    """All v with v.v == target_norm.

    Negative definite lattices are enumerated completely (``box_bound`` is
    ignored).  Otherwise the search covers the coefficient box
    ``|v_i| <= box_bound`` only.
    """
    if lat.is_negative_definite:
        q = [[-x for x in r] for r in lat.gram]
        return sorted(v for v, nv in fincke_pohst(q, -target_norm) if nv == -target_norm)
    if require_complete:
        raise LatticeError("completeness unavailable for indefinite lattices")
    rng = range(-box_bound, box_bound + 1)
    return [v for v in itertools.product(rng, repeat=lat.rank) if lat.norm(v) == target_norm]


def roots(lat: GramLattice) -> list[tuple[int, ...]]:
    return short_vectors(lat, -2, require_complete=True)


def coset_vectors(lat: GramLattice, shift: Sequence[Fraction], target_norm: Fraction | int,
                  exact: bool = True) -> list[tuple[Fraction, ...]]:
    """Vectors ``x + shift`` (x integral) of norm ``target_norm`` (or >= it if not exact).

    Negative definite lattices only; the enumeration is complete.
    """
    if not lat.is_negative_definite:
        raise LatticeError("coset enumeration needs a negative definite lattice")
    q = [[-x for x in r] for r in lat.gram]
    target = Fraction(target_norm)
    out = []
    for x, nv in fincke_pohst(q, -target, shift):
        if not exact or nv == -target:
            out.append(tuple(Fraction(a) + Fraction(b) for a, b in zip(x, shift)))
    return out


def _l1_shell(n: int, radius: int, box: Sequence[tuple[int, int]]) -> Iterator[list[int]]:
    """Integer vectors with sum |y_i| == radius and lo_i <= y_i <= hi_i."""
    y = [0] * n

    def rec(i: int, left: int):
        if i == n - 1:
            for val in ((left, -left) if left else (0,)):
                if box[i][0] <= val <= box[i][1]:
                    y[i] = val
                    yield y
            y[i] = 0
            return
        for a in range(left + 1):
            for val in ((a, -a) if a else (0,)):
                if box[i][0] <= val <= box[i][1]:
                    y[i] = val
                    yield from rec(i + 1, left - a)
        y[i] = 0

    yield from rec(0, radius)


def represent_class_with_norm(lat: GramLattice, cls: Sequence[int], target_norm: int,
                              box_bound: int = 6, max_box: int = 24) -> tuple[int, ...] | None:
    """Some z with z = cls (mod 2L) and z.z == target_norm, or None.

    Definite lattices are searched completely.  Indefinite lattices are
    searched over ``|z_i| <= box`` for box = box_bound, 2*box_bound, ...,
    max_box, shell by shell in the L1 distance from the 0/1 lift; ``None``
    then means absent within that box.
    """
    c = [int(b) % 2 for b in cls]
    n = lat.rank
    if lat.is_negative_definite:
        shift = [Fraction(b, 2) for b in c]
        hits = coset_vectors(lat, shift, Fraction(target_norm, 4))
        if not hits:
            return None
        return min(tuple(int(2 * h) for h in hit) for hit in hits)
    box = box_bound
    searched = -1
    while True:
        # z_i = c_i + 2 y_i with |z_i| <= box
        bounds = [(-((box + ci) // 2), (box - ci) // 2) for ci in c]
        max_r = sum(max(-lo, hi) for lo, hi in bounds)
        for radius in range(max_r + 1):
            for y in _l1_shell(n, radius, bounds):
                z = [ci + 2 * yi for ci, yi in zip(c, y)]
                if searched >= 0 and all(abs(v) <= searched for v in z):
                    continue
                if lat.norm(z) == target_norm:
                    return tuple(z)
        if box >= max_box:
            return None
        searched = box
        box = min(2 * box, max_box)


def index2_even_glue(lat: GramLattice) -> list[tuple[int, ...]]:
    """Classes x in L/2L (0/1 vectors, x != 0) with L + Z x/2 integral and even."""
    if not lat.is_even:
        raise LatticeError("lattice must be even")
    n = lat.rank
    g = lat.gram
    out = []
    for x in itertools.product((0, 1), repeat=n):
        if not any(x):
            continue
        if any(sum(g[i][j] * x[j] for j in range(n)) % 2 for i in range(n)):
            continue
        if lat.norm(x) % 8 == 0:
            out.append(x)
    return out


def index2_even_superlattices(lat: GramLattice) -> list[GramLattice]:
    return [overlattice(lat, [RationalVector(x, 2)], label=f"{lat.label}+{''.join(map(str, x))}/2")[0]
            for x in index2_even_glue(lat)]


def find_vector_with_norm(lat: GramLattice, target_norm: int, box_bound: int = 6) -> tuple[int, ...] | None:
    """Some nonzero v with v.v == target_norm, searched in L1 shells inside the box.

    Complete for negative definite lattices; a bounded search otherwise.
    """
    if lat.is_negative_definite:
        hits = [v for v in short_vectors(lat, target_norm) if any(v)]
        return min(hits) if hits else None
    bounds = [(-box_bound, box_bound)] * lat.rank
    for radius in range(1, box_bound * lat.rank + 1):
        for y in _l1_shell(lat.rank, radius, bounds):
            if lat.norm(y) == target_norm:
                return tuple(y)
    return None


def scaled_dual(lat: GramLattice, scale: int) -> GramLattice:
    """The dual lattice in its dual basis, with the form multiplied by ``scale``.

    Raises if ``scale`` does not clear the denominators of the inverse Gram.
    """
    n = lat.rank
    rows = []
    for i in range(n):
        col = solve_rational(lat.gram, [int(i == j) for j in range(n)])
        row = [scale * x for x in col]
        if any(x.denominator != 1 for x in row):
            raise LatticeError("scale does not make the dual integral")
        rows.append([int(x) for x in row])
    return GramLattice.from_rows(rows, f"{lat.label}^v({scale})")
