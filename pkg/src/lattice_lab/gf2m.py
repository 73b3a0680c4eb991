"""Arithmetic in GF(2^m) and linear algebra of subspaces over it.

Field elements are ints whose bit i is the coefficient of x^i modulo the
field's modulus.  Subspaces are stored in reduced row-echelon form, so two
subspaces are equal exactly when their row tuples are equal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

# Smallest irreducible polynomial of each degree, ordered by integer value
# (equivalently lexicographically on the coefficient string, top degree first).
MODULI = {
    1: 0x2, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B,
}

Vector = tuple[int, ...]


class FieldError(ValueError):
    pass


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def is_irreducible(p: int) -> bool:
    d = p.bit_length() - 1
    if d < 1:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if 1 <= q.bit_length() - 1 <= d // 2 and _poly_mod(p, q) == 0:
            return False
    return True


def _factorize(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True, eq=False)
class ExtensionField:
    degree: int
    modulus: int = field(init=False)
    _exp: tuple[int, ...] = field(init=False, repr=False)
    _log: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.degree not in MODULI:
            raise FieldError(f"field degree must lie in 1..16, got {self.degree}")
        mod = MODULI[self.degree]
        if not is_irreducible(mod):
            raise FieldError(f"modulus {mod:#x} is reducible")
        object.__setattr__(self, "modulus", mod)
        order = (1 << self.degree) - 1
        primes = _factorize(order) if order > 1 else []
        for g in range(1, 1 << self.degree):
            if all(self._slow_pow(g, order // p) != 1 for p in primes):
                break
        exp = [0] * (2 * order)
        log = [0] * (order + 1)
        x = 1
        for i in range(order):
            exp[i] = exp[i + order] = x
            log[x] = i
            x = self._slow_mul(x, g)
        object.__setattr__(self, "_exp", tuple(exp))
        object.__setattr__(self, "_log", tuple(log))

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.degree == self.degree

    def __hash__(self):
        return hash(("GF2m", self.degree))

    def _slow_mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.degree:
                a ^= self.modulus
        return r

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    @property
    def size(self) -> int:
        return 1 << self.degree

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        order = self.size - 1
        return self._exp[(order - self._log[a]) % order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        order = self.size - 1
        return self._exp[(self._log[a] * e) % order]

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def frob(self, a: int, times: int = 1) -> int:
        return self.pow(a, 1 << (times % self.degree)) if a else 0

    def trace(self, a: int) -> int:
        t, x = 0, a
        for _ in range(self.degree):
            t ^= x
            x = self.square(x)
        return t

    def sqrt(self, a: int) -> int:
        return self.frob(a, self.degree - 1)

    def random_element(self, rng: random.Random, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.size)

    def subfield_degree(self, a: int) -> int:
        """Smallest d with a^(2^d) == a."""
        for d in range(1, self.degree + 1):
            if self.degree % d == 0 and self.frob(a, d) == a:
                return d
        return self.degree

    def solve_artin_schreier(self, c: int) -> int | None:
        """Some t with t^2 + t == c, or None if Tr(c) != 0."""
        if self.trace(c):
            return None
        for t in range(self.size):
            if self.square(t) ^ t == c:
                return t
        return None  # pragma: no cover

    def solve_quadratic(self, a: int, b: int, c: int) -> list[int]:
        """All roots t of a t^2 + b t + c."""
        if a == 0:
            if b == 0:
                return list(range(self.size)) if c == 0 else []
            return [self.mul(c, self.inv(b))]
        if b == 0:
            return [self.sqrt(self.mul(c, self.inv(a)))]
        # substitute t = (b/a) u:  u^2 + u = a c / b^2
        rhs = self.mul(self.mul(a, c), self.inv(self.square(b)))
        u = self.solve_artin_schreier(rhs)
        if u is None:
            return []
        scale = self.mul(b, self.inv(a))
        return [self.mul(scale, u), self.mul(scale, u ^ 1)]


@lru_cache(maxsize=None)
def gf(m: int) -> ExtensionField:
    return ExtensionField(m)


# --------------------------------------------------------------------------
# matrices over GF(2^m)


def rref(F: ExtensionField, rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form and pivot columns; zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = F.inv(mat[r][c])
        if inv != 1:
            mat[r] = [F.mul(inv, x) for x in mat[r]]
        piv = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x ^ F.mul(f, y) for x, y in zip(mat[i], piv)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(F: ExtensionField, rows: Iterable[Sequence[int]]) -> int:
    return len(rref(F, rows)[0])


def nullspace(F: ExtensionField, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : rows . x == 0}."""
    red, piv = rref(F, rows)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, p in zip(red, piv):
            x[p] = r[f]  # characteristic 2: -r[f] == r[f]
        out.append(x)
    return out


def mat_vec(F: ExtensionField, mat: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    out = []
    for row in mat:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s ^= F.mul(a, b)
        out.append(s)
    return out


def vec_mat(F: ExtensionField, v: Sequence[int], mat: Sequence[Sequence[int]]) -> list[int]:
    """Row vector times matrix, i.e. the combination sum v_i * mat[i]."""
    out = [0] * (len(mat[0]) if mat else 0)
    for c, row in zip(v, mat):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] ^= F.mul(c, x)
    return out


def solve_linear(F: ExtensionField, rows: Sequence[Sequence[int]], rhs: Sequence[int],
                 ncols: int) -> list[int] | None:
    """One solution x of rows . x == rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(F, aug)
    if ncols in piv:
        return None
    x = [0] * ncols
    for r, p in zip(red, piv):
        x[p] = r[ncols]
    return x


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    field_degree: int
    rows: tuple[Vector, ...]

    @classmethod
    def span(cls, F: ExtensionField, vectors: Iterable[Sequence[int]], ambient_dim: int) -> Subspace:
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise FieldError("vector length does not match the ambient dimension")
        red, _ = rref(F, vecs)
        return cls(ambient_dim, F.degree, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, F: ExtensionField, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, F.degree, ())

    @classmethod
    def whole(cls, F: ExtensionField, ambient_dim: int) -> Subspace:
        return cls.span(F, [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)],
                        ambient_dim)

    @property
    def field(self) -> ExtensionField:
        return gf(self.field_degree)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.dim

    def contains(self, v: Sequence[int]) -> bool:
        return rank(self.field, list(self.rows) + [list(v)]) == self.dim

    def contains_space(self, other: Subspace) -> bool:
        return (self + other).dim == self.dim

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.field, list(self.rows) + list(other.rows), self.ambient_dim)

    def annihilator(self) -> Subspace:
        """{x : x . u == 0 for all u} under the standard dot product."""
        basis = nullspace(self.field, self.rows, self.ambient_dim) if self.rows else \
            [[int(i == j) for j in range(self.ambient_dim)] for i in range(self.ambient_dim)]
        return Subspace.span(self.field, basis, self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def frobenius(self, times: int = 1) -> Subspace:
        F = self.field
        return Subspace.span(F, [[F.frob(x, times) for x in r] for r in self.rows], self.ambient_dim)

    def is_rational(self) -> bool:
        return all(x in (0, 1) for r in self.rows for x in r)

    def project(self, coords: Sequence[int]) -> Subspace:
        """Image under the coordinate projection onto ``coords``."""
        return Subspace.span(self.field, [[r[c] for c in coords] for r in self.rows], len(coords))

    def extend(self, F: ExtensionField) -> Subspace:
        """The same rational (or subfield) subspace seen over a larger field."""
        if not self.is_rational():
            raise FieldError("only F2-rational subspaces can be transported between fields")
        return Subspace(self.ambient_dim, F.degree, self.rows)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "field_degree": self.field_degree,
                "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> Subspace:
        F = gf(int(data["field_degree"]))
        for r in data["rows"]:
            if any(not 0 <= x < F.size for x in r):
                raise FieldError("entry outside the field")
        s = cls.span(F, data["rows"], int(data["ambient_dim"]))
        if [list(r) for r in s.rows] != [list(r) for r in data["rows"]]:
            raise FieldError("rows are not in reduced row-echelon form")
        return s

    def _check(self, other: Subspace) -> None:
        if (self.ambient_dim, self.field_degree) != (other.ambient_dim, other.field_degree):
            raise FieldError("subspaces live in different ambients")


def stable_core(s: Subspace) -> Subspace:
    """S_inf = intersection of F^i(S) over i >= 0; it is F-stable."""
    cur = s
    while True:
        nxt = cur.intersect(cur.frobenius())
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def rational_part(s: Subspace) -> Subspace:
    """Largest F2-rational subspace of s, returned over the same field with 0/1 rows.

    An F-stable subspace has an F-stable reduced echelon basis, so its entries
    are fixed by squaring and lie in F2.
    """
    core = stable_core(s)
    if not core.is_rational():
        raise AssertionError("Frobenius-stable subspace has a non-rational echelon basis")
    return core
