"""Permutations, Schreier-Sims stabilizer chains, and the W(D9) model."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        """(self * other)(x) = self(other(x))."""
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def __pow__(self, e: int) -> Permutation:
        if e < 0:
            return self.inverse() ** (-e)
        out = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for s in range(self.degree):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            x = self.images[s]
            while x != s:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def conjugate(self, g: Permutation) -> Permutation:
        """g self g^-1."""
        return g * self * g.inverse()

    def __repr__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


@dataclass
class _Level:
    base_point: int
    generators: list[Permutation]
    orbit: dict[int, Permutation]  # point -> transversal element u with u(base) = point


class PermGroup:
    """A permutation group given by generators, with a lazily built stabilizer chain."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = [g for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree needed for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators of different degree")
        self.degree = degree
        self.generators = [g for g in gens if not g.is_identity()]
        self._chain: list[_Level] | None = None

    # --- Schreier-Sims ---------------------------------------------------

    @property
    def chain(self) -> list[_Level]:
        if self._chain is None:
            self._chain = self._schreier_sims()
        return self._chain

    def _orbit(self, point: int, gens: list[Permutation]) -> dict[int, Permutation]:
        orbit = {point: Permutation.identity(self.degree)}
        queue = [point]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g(x)
                if y not in orbit:
                    orbit[y] = g * orbit[x]
                    queue.append(y)
        return orbit

    def _sift(self, chain: list[_Level], g: Permutation) -> tuple[Permutation, int]:
        for i, lvl in enumerate(chain):
            b = g(lvl.base_point)
            if b not in lvl.orbit:
                return g, i
            g = lvl.orbit[b].inverse() * g
        return g, len(chain)

    def _schreier_sims(self) -> list[_Level]:
        """Deterministic Schreier-Sims: check Schreier generators level by level, bottom up."""
        base: list[int] = []
        strong: list[Permutation] = list(self.generators)

        def moved_point(g: Permutation) -> int:
            return next(i for i, x in enumerate(g.images) if i != x)

        for g in strong:
            if all(g(b) == b for b in base):
                base.append(moved_point(g))

        def build() -> list[_Level]:
            out = []
            for i, b in enumerate(base):
                gens = [s for s in strong if all(s(c) == c for c in base[:i])]
                out.append(_Level(b, gens, self._orbit(b, gens)))
            return out

        chain = build()
        i = len(base) - 1
        while i >= 0:
            lvl = chain[i]
            added = None
            for x, u in lvl.orbit.items():
                for s in lvl.generators:
                    sch = lvl.orbit[s(x)].inverse() * s * u
                    if sch.is_identity():
                        continue
                    h, j = self._sift(chain[i + 1:], sch)
                    if not h.is_identity():
                        added = (h, i + 1 + j)
                        break
                if added:
                    break
            if added is None:
                i -= 1
                continue
            h, j = added
            strong.append(h)
            if j == len(base):
                base.append(moved_point(h))
            chain = build()
            i = j
        return chain

    # --- queries ---------------------------------------------------------

    def order(self) -> int:
        return math.prod(len(l.orbit) for l in self.chain)

    def __contains__(self, g: Permutation) -> bool:
        h, _ = self._sift(self.chain, g)
        return h.is_identity()

    def base(self) -> list[int]:
        return [l.base_point for l in self.chain]

    def elements(self) -> Iterator[Permutation]:
        levels = [list(l.orbit.values()) for l in self.chain]
        for combo in itertools.product(*levels):
            g = Permutation.identity(self.degree)
            for u in reversed(combo):
                g = u * g
            yield g

    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for p in range(self.degree):
            if p not in seen:
                orb = tuple(sorted(self._orbit(p, self.generators)))
                seen.update(orb)
                out.append(orb)
        return out

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def normalizes(self, other: PermGroup) -> bool:
        return all(h.conjugate(g) in other for g in self.generators for h in other.generators)

    def cycle_type_census(self) -> Counter:
        return Counter(g.cycle_type() for g in self.elements())

    def invariants(self) -> tuple:
        return (self.order(), tuple(sorted(len(o) for o in self.orbits())),
                tuple(sorted(self.cycle_type_census().items())))


def group_order(g: PermGroup) -> int:
    return g.order()


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    gens = [Permutation.from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return PermGroup(gens, n)


def trivial_group(n: int) -> PermGroup:
    return PermGroup([], n)


def are_conjugate_subgroups(a: PermGroup, b: PermGroup, ambient: PermGroup) -> Permutation | None:
    """Some g in ``ambient`` with g A g^-1 = B, or None.

    Invariants (order, orbit lengths, cycle types) are compared first; then
    candidate images of A's base are extended one point at a time, keeping
    only partial maps that send each A-orbit onto a B-orbit of the same size.
    """
    if a.invariants() != b.invariants():
        return None
    if not a.generators:
        return Permutation.identity(a.degree)
    n = a.degree
    orbit_a = {p: len(o) for o in a.orbits() for p in o}
    orbit_b = {p: len(o) for o in b.orbits() for p in o}
    fixed_a = [p for p in range(n) if orbit_a[p] == 1]
    moved = [p for p in range(n) if orbit_a[p] > 1]
    order = moved + fixed_a
    img: dict[int, int] = {}

    def rec(k: int) -> Permutation | None:
        if k == len(order):
            g = Permutation(tuple(img[i] for i in range(n)))
            if g in ambient and all(h.conjugate(g) in b for h in a.generators):
                return g
            return None
        p = order[k]
        used = set(img.values())
        for q in range(n):
            if q in used or orbit_b[q] != orbit_a[p]:
                continue
            img[p] = q
            # partial check: g h g^-1 must send g(x) to g(h(x)) for known x
            ok = True
            for h in a.generators:
                for x, gx in img.items():
                    hx = h(x)
                    if hx in img and not _partial_ok(b, gx, img[hx]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                r = rec(k + 1)
                if r is not None:
                    return r
            del img[p]
        return None

    return rec(0)


def _partial_ok(b: PermGroup, x: int, y: int) -> bool:
    """Some element of B maps x to y (necessary for a conjugator)."""
    return any(y in o and x in o for o in b.orbits())


# --------------------------------------------------------------------------
# W(D9) as signed permutations on 18 points (i and i + 9 are +-e_i)


def signed_permutation(perm: Sequence[int], signs: Sequence[int]) -> Permutation:
    """e_i -> signs[i] e_perm[i] as a permutation of 2n points."""
    n = len(perm)
    img = [0] * (2 * n)
    for i, (p, s) in enumerate(zip(perm, signs)):
        plus, minus = (p, p + n) if s > 0 else (p + n, p)
        img[i] = plus
        img[i + n] = minus
    return Permutation(tuple(img))


class SignedPermGroup(PermGroup):
    """W(D_n): permutations of coordinates with an even number of sign changes."""

    def __init__(self, n: int = 9):
        ident = list(range(n))
        gens = [signed_permutation([1, 0] + ident[2:], [1] * n),
                signed_permutation(ident[1:] + ident[:1], [1] * n),
                signed_permutation(ident, [-1, -1] + [1] * (n - 2))]
        super().__init__(gens, 2 * n)
        self.rank = n

    def forget_signs(self, g: Permutation) -> Permutation:
        n = self.rank
        return Permutation(tuple(g(i) % n for i in range(n)))

    def sign_kernel_order(self) -> int:
        n = self.rank
        kernel_gens = [signed_permutation(list(range(n)), [-1 if j in (0, i) else 1 for j in range(n)])
                       for i in range(1, n)]
        return PermGroup(kernel_gens, 2 * n).order()
