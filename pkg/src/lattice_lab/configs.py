"""Rank-12 configurations of 2-elementary Dynkin types and their admissibility."""

from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .lattice import (GramLattice, RationalVector, coset_vectors, direct_sum, is_two_elementary,
                      overlattice, roots)
from .roots import (DynkinType, a_vector, build_root_lattice, diagram_edges, is_even_in_lattice,
                    orthogonal_root_decomposition)
from .standard import m_lattice

COMPONENT_TYPES = ("A1", "D4", "D6", "D8", "D10", "D12", "E7", "E8")
TOTAL_RANK = 12


@dataclass(frozen=True)
class Configuration:
    components: tuple[str, ...]  # sorted type names, e.g. ("A1", "A1", "D10")

    @classmethod
    def of(cls, *names: str) -> Configuration:
        return cls(tuple(sorted(names, key=_type_key)))

    @classmethod
    def parse(cls, text: str) -> Configuration:
        """Parse strings like ``"8A1+D4"`` or ``"3xD4"``."""
        names = []
        for part in text.replace(" ", "").split("+"):
            part = part.replace("x", "").replace("×", "")
            i = 0
            while i < len(part) and part[i].isdigit():
                i += 1
            count = int(part[:i]) if i else 1
            names += [part[i:]] * count
        return cls.of(*names)

    @property
    def total_rank(self) -> int:
        return sum(DynkinType.parse(c).rank for c in self.components)

    def types(self) -> list[DynkinType]:
        return [DynkinType.parse(c) for c in self.components]

    def __str__(self) -> str:
        counts = Counter(self.components)
        return "+".join(f"{counts[c]}{c}" if counts[c] > 1 else c
                        for c in sorted(counts, key=_type_key))


def _type_key(name: str):
    t = DynkinType.parse(name)
    return ("ADE".index(t.family[0]), t.rank)


def enumerate_candidates(total: int = TOTAL_RANK) -> list[Configuration]:
    """All multisets of component types with ranks summing to ``total``."""
    ranks = {n: DynkinType.parse(n).rank for n in COMPONENT_TYPES}
    out = []

    def rec(i: int, left: int, acc: list[str]):
        if left == 0:
            out.append(Configuration.of(*acc))
            return
        if i == len(COMPONENT_TYPES):
            return
        name = COMPONENT_TYPES[i]
        for k in range(left // ranks[name] + 1):
            rec(i + 1, left - k * ranks[name], acc + [name] * k)

    rec(0, total, [])
    return sorted(out, key=lambda c: [_type_key(x) for x in c.components])


def is_even_configuration(c: Configuration) -> bool:
    """Every component is D_{4n} or E8."""
    return all((t.family == "D" and t.rank % 4 == 0) or t == DynkinType("E", 8) for t in c.types())


def configuration_lattice(c: Configuration) -> GramLattice:
    return direct_sum(*(build_root_lattice(t) for t in c.types()), label=str(c))


@dataclass
class AdmissibilityReport:
    config: Configuration
    half_sum: tuple[Fraction, ...]
    half_sum_in_lattice: bool
    integral: bool
    even: bool
    new_roots: list[tuple[Fraction, ...]] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.integral and self.even and not self.new_roots

    def to_json(self) -> dict:
        return {
            "config": str(self.config),
            "half_sum_in_lattice": self.half_sum_in_lattice,
            "integral": self.integral,
            "even": self.even,
            "new_roots": [[str(x) for x in r] for r in self.new_roots[:4]],
            "new_root_count": len(self.new_roots),
            "verdict": self.verdict,
        }


def half_sum(c: Configuration, order: str = "desc", seed: int = 0) -> tuple[Fraction, ...]:
    """(1/2) * sum of all roots of an orthogonal A1^12 realisation."""
    out: list[Fraction] = []
    for t in c.types():
        rs = orthogonal_root_decomposition(t, order=order, seed=seed)
        out += [Fraction(sum(col), 2) for col in zip(*rs)]
    return tuple(out)


def admissibility(c: Configuration, order: str = "desc", seed: int = 0) -> AdmissibilityReport:
    lat = configuration_lattice(c)
    h = half_sum(c, order, seed)
    in_lattice = all(x.denominator == 1 for x in h)
    integral = all(sum(lat.gram[i][j] * h[j] for j in range(lat.rank)).denominator == 1
                   for i in range(lat.rank))
    hh = lat.norm(h)
    even = hh.denominator == 1 and hh % 2 == 0
    new_roots = [] if in_lattice or not integral else coset_vectors(lat, h, -2)
    return AdmissibilityReport(c, h, in_lattice, integral, even, new_roots)


def classify() -> tuple[list[Configuration], list[Configuration], list[AdmissibilityReport]]:
    """Admissible candidates split into (odd, even), plus all reports."""
    reports = [admissibility(c) for c in enumerate_candidates()]
    odd = [r.config for r in reports if r.verdict and not is_even_configuration(r.config)]
    even = [r.config for r in reports if r.verdict and is_even_configuration(r.config)]
    return odd, even, reports


def disc_report(c: Configuration) -> int:
    """|disc| of the span of the configuration with the half-sum adjoined."""
    lat = configuration_lattice(c)
    h = half_sum(c)
    if all(x.denominator == 1 for x in h):
        return abs(lat.det)
    glued, _, _ = overlattice(lat, [RationalVector.from_fractions(h)])
    return abs(glued.det)


def chern_bookkeeping(r: int) -> int:
    """c2 of the singular surface when the resolution is K3 and the singular index is r."""
    if not 0 <= r <= TOTAL_RANK:
        raise ValueError("index must lie in 0..12")
    return 24 - 2 * r


def two_elementary_connected_types(max_rank: int = 12) -> list[str]:
    """Connected ADE types of rank <= max_rank whose root lattice is 2-elementary."""
    names = [f"A{n}" for n in range(1, max_rank + 1)] + [f"D{n}" for n in range(4, max_rank + 1)]
    names += ["E6", "E7", "E8"]
    return [n for n in names if is_two_elementary(build_root_lattice(n))]


# --------------------------------------------------------------------------
# embeddings of M into D4 + D4 + D4


@dataclass
class EmbeddingCount:
    line_frames: int
    signed_frames: int
    image_orbits: int
    automorphism_order: int
    ordered_embedding_orbits: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _d4_cube():
    d4 = build_root_lattice("D4")
    lat = direct_sum(d4, d4, d4, label="3D4")
    rs = [tuple(v) for v in roots(lat)]
    return lat, rs


def _normalise(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _d4_cube_automorphisms() -> list[list[list[int]]]:
    """Generators of Aut(D4^3) as integer matrices acting on column coordinates."""
    n = 12
    gens = []
    g = build_root_lattice("D4").gram

    def block(f, m4):
        mat = [[int(i == j) for j in range(n)] for i in range(n)]
        for i in range(4):
            for j in range(4):
                mat[4 * f + i][4 * f + j] = m4[i][j]
        return mat

    for f in range(3):
        for k in range(4):
            # s_k(x) = x - (2 x.a_k / a_k.a_k) a_k = x + (x.a_k) a_k
            m4 = [[int(i == j) for j in range(4)] for i in range(4)]
            for j in range(4):
                m4[k][j] += g[k][j]
            gens.append(block(f, m4))
        # diagram automorphisms: outer nodes 1, 3, 4 around the centre 2
        for perm in ((2, 1, 0, 3), (3, 1, 2, 0)):
            m4 = [[int(perm[j] == i) for j in range(4)] for i in range(4)]
            gens.append(block(f, m4))
    for perm in ((1, 0, 2), (1, 2, 0)):
        mat = [[0] * n for _ in range(n)]
        for f in range(3):
            for i in range(4):
                mat[4 * perm[f] + i][4 * f + i] = 1
        gens.append(mat)
    return gens


def _apply(mat, v):
    return tuple(sum(mat[i][j] * v[j] for j in range(len(v))) for i in range(len(mat)))


@lru_cache(maxsize=None)
def embeddings_M_into_3D4() -> EmbeddingCount:
    """Count embeddings of M into D4^3 via frames of 12 orthogonal roots.

    ``image_orbits`` counts embeddings up to Aut(D4^3) on the target and O(M)
    on the source (the roots of M are exactly +-e_i, so O(M) is the signed
    permutation group and only the image sublattice matters).
    ``ordered_embedding_orbits`` quotients labelled embeddings by Aut(D4^3)
    alone, which acts freely.
    """
    lat, rs = _d4_cube()
    lines = sorted({_normalise(r) for r in rs})
    ortho = {a: {b for b in lines if b != a and lat.dot(a, b) == 0} for a in lines}
    frames = []

    def rec(chosen, cand):
        if len(chosen) == 12:
            frames.append(frozenset(chosen))
            return
        for b in sorted(cand):
            if chosen and b <= chosen[-1]:
                continue
            rec(chosen + [b], cand & ortho[b])

    rec([], set(lines))
    signed = 0
    good_frames = []
    for fr in frames:
        fl = sorted(fr)
        count = 0
        for signs in itertools.product((1, -1), repeat=11):
            s = (1,) + signs  # the overall sign does not change membership
            tot = [sum(sg * r[i] for sg, r in zip(s, fl)) for i in range(12)]
            if all(x % 2 == 0 for x in tot):
                count += 1
        signed += 2 * count
        if count:
            good_frames.append(fr)
    gens = _d4_cube_automorphisms()
    for mat in gens:
        for r in rs:
            if lat.norm(_apply(mat, r)) != -2:
                raise AssertionError("generator is not an isometry")
    seen: set[frozenset] = set()
    orbits = 0
    for fr in good_frames:
        if fr in seen:
            continue
        orbits += 1
        queue = deque([fr])
        seen.add(fr)
        while queue:
            cur = queue.popleft()
            for mat in gens:
                img = frozenset(_normalise(_apply(mat, r)) for r in cur)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    aut = (192 * 6) ** 3 * 6
    ordered = Fraction(signed * math.factorial(12), aut)
    if ordered.denominator != 1:
        raise AssertionError("automorphism action is not free")
    # half-sum sanity: (1/4) * 12 * (-2)
    fl = sorted(good_frames[0])
    h = [Fraction(sum(r[i] for r in fl), 2) for i in range(12)]
    if lat.norm(h) != -6:
        raise AssertionError("half-sum has wrong norm")
    _check_frame_is_m(lat, fl)
    return EmbeddingCount(len(frames), signed, orbits, aut, int(ordered))


def _check_frame_is_m(lat: GramLattice, frame: list[tuple[int, ...]]) -> None:
    basis = frame[:11] + [tuple(Fraction(sum(r[i] for r in frame), 2) for i in range(12))]
    gram = [[lat.dot(a, b) for b in basis] for a in basis]
    if gram != [list(r) for r in m_lattice().gram]:
        raise AssertionError("frame does not span a copy of M")
