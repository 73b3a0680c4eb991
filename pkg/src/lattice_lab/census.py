"""Census of subgroups H x| C of S9 (H a 2-group, C cyclic of odd order).

Elements of S9 are handled by their lexicographic rank 0 <= r < 9!.  All
heavy steps (normalizers, conjugacy tests, orbit marking) are vectorised
over the whole group with numpy.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .perms import Permutation

DEGREE = 9
REFERENCE_SIGMA = (2**6 * 3, 2**7, 2 * 3 * 5, 2**3 * 7, 2**3 * 5, 3**2)
ALT_SIGMA = (2**6 * 3, 2**7, 60, 2**3 * 7, 2**3 * 5, 3**2)
EXPECTED_CLASS_COUNT = 171
CACHE_ENV = "LATTICE_LAB_CACHE"


class _Sym:
    """Tables for the full symmetric group of degree 9."""

    def __init__(self, n: int = DEGREE):
        self.n = n
        self.perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
        self.size = len(self.perms)
        self.fact = [math.factorial(k) for k in range(n + 1)]
        self.identity = 0
        inv = np.empty_like(self.perms)
        rows = np.arange(self.size)[:, None]
        inv[rows, self.perms] = np.arange(n)[None, :]
        self.inv = self.rank(inv)
        self.order = self._orders()
        self.ctype = self._cycle_type_ids()

    def rank(self, arr: np.ndarray) -> np.ndarray:
        arr = np.atleast_2d(arr)
        r = np.zeros(len(arr), dtype=np.int64)
        for i in range(self.n - 1):
            c = (arr[:, i + 1:] < arr[:, i:i + 1]).sum(axis=1)
            r += c * self.fact[self.n - 1 - i]
        return r

    def _orders(self) -> np.ndarray:
        cur = self.perms.copy()
        order = np.zeros(self.size, dtype=np.int64)
        ident = np.arange(self.n)
        for k in range(1, 21):
            done = (order == 0) & np.all(cur == ident, axis=1)
            order[done] = k
            cur = np.take_along_axis(cur, self.perms, axis=1) if k == 1 else \
                np.take_along_axis(self.perms, cur, axis=1)
        if np.any(order == 0):
            raise AssertionError("element order exceeds table")
        return order

    def _cycle_type_ids(self) -> np.ndarray:
        types = {}
        out = np.zeros(self.size, dtype=np.int64)
        for r in range(self.size):
            ct = Permutation(tuple(int(x) for x in self.perms[r])).cycle_type()
            out[r] = types.setdefault(ct, len(types))
        self.cycle_types = sorted(types, key=types.get)
        return out

    def compose(self, a: np.ndarray | int, b: np.ndarray | int) -> np.ndarray:
        """Ranks of a * b (apply b first), elementwise or broadcast."""
        pa = self.perms[np.atleast_1d(a)]
        pb = self.perms[np.atleast_1d(b)]
        if len(pa) == 1 and len(pb) > 1:
            pa = np.repeat(pa, len(pb), axis=0)
        if len(pb) == 1 and len(pa) > 1:
            pb = np.repeat(pb, len(pa), axis=0)
        return self.rank(np.take_along_axis(pa, pb, axis=1))

    def conjugates(self, h: int, by: np.ndarray | None = None) -> np.ndarray:
        """Ranks of g h g^-1 for every g in ``by`` (default: the whole group)."""
        g = self.perms if by is None else self.perms[by]
        hp = self.perms[h]
        out = np.empty_like(g)
        out[np.arange(len(g))[:, None], g] = g[:, hp]
        return self.rank(out)

    def from_ranks(self, r: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.perms[r]))

    def to_rank(self, p: Permutation) -> int:
        return int(self.rank(np.array([p.images]))[0])


@lru_cache(maxsize=None)
def sym9() -> _Sym:
    return _Sym()


@dataclass
class Subgroup:
    elements: np.ndarray  # sorted ranks
    generators: list[int]

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, ranks: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.elements, ranks)
        idx = np.minimum(idx, len(self.elements) - 1)
        return self.elements[idx] == ranks


def closure(gens: list[int]) -> Subgroup:
    S = sym9()
    elems = np.array([S.identity], dtype=np.int64)
    frontier = elems
    gset = np.array(gens, dtype=np.int64) if gens else np.zeros(0, dtype=np.int64)
    while len(frontier) and len(gset):
        new = np.concatenate([S.compose(frontier, g) for g in gset])
        new = np.setdiff1d(np.unique(new), elems)
        elems = np.union1d(elems, new)
        frontier = new
    return Subgroup(elems, list(gens))


def invariant(H: Subgroup) -> tuple:
    S = sym9()
    hist = np.bincount(S.ctype[H.elements], minlength=len(S.cycle_types))
    # orbit lengths on points
    parent = list(range(DEGREE))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in H.generators:
        for i, j in enumerate(S.perms[g]):
            a, b = find(i), find(int(j))
            if a != b:
                parent[a] = b
    orbits = sorted(Counter(find(i) for i in range(DEGREE)).values())
    return (H.order, tuple(int(x) for x in hist), tuple(orbits))


def normalizer(H: Subgroup) -> np.ndarray:
    S = sym9()
    cand = np.arange(S.size)
    for h in H.generators:
        cand = cand[H.contains(S.conjugates(h, cand))]
    return cand


def conjugator(A: Subgroup, B: Subgroup) -> int | None:
    """Rank of some g with g A g^-1 = B, or None (A, B of equal order)."""
    if A.order != B.order:
        return None
    S = sym9()
    cand = np.arange(S.size)
    for h in A.generators:
        cand = cand[B.contains(S.conjugates(h, cand))]
        if not len(cand):
            return None
    return int(cand[0])


# --------------------------------------------------------------------------
# 2-subgroups


def _relabel_key(relabel: tuple[int, ...] | None) -> np.ndarray | None:
    if relabel is None:
        return None
    S = sym9()
    return S.conjugates(S.to_rank(Permutation(tuple(relabel))))


def two_subgroups_up_to_conjugacy(relabel: tuple[int, ...] | None = None) -> list[Subgroup]:
    """One representative per S9-class of 2-subgroups, by index-2 extension."""
    S = sym9()
    key = _relabel_key(relabel)
    trivial = Subgroup(np.array([S.identity], dtype=np.int64), [])
    reps = [trivial]
    buckets: dict[tuple, list[int]] = {invariant(trivial): [0]}
    level = [trivial]
    while level:
        nxt = []
        for K in level:
            NK = normalizer(K)
            sq = S.compose(NK, NK)
            ok = K.contains(sq) & ~K.contains(NK)
            cand = NK[ok]
            if key is not None:
                cand = cand[np.argsort(key[cand], kind="stable")]
            marked = np.zeros(S.size, dtype=bool)
            for x in cand:
                if marked[x]:
                    continue
                coset = S.compose(np.full(K.order, x), K.elements)
                for y in coset:
                    marked[S.conjugates(int(y), NK)] = True
                H = Subgroup(np.union1d(K.elements, coset), K.generators + [int(x)])
                inv = invariant(H)
                if any(conjugator(H, reps[i]) is not None for i in buckets.get(inv, [])):
                    continue
                buckets.setdefault(inv, []).append(len(reps))
                reps.append(H)
                nxt.append(H)
        level = nxt
    return reps


# --------------------------------------------------------------------------
# H x| C census


@dataclass
class CensusRecord:
    generators: list[list[int]]
    order: int
    h_order: int
    c_order: int
    class_id: int
    factorization: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"generators": self.generators, "order": self.order, "h_order": self.h_order,
                "c_order": self.c_order, "class_id": self.class_id,
                "factorization": {str(k): v for k, v in sorted(self.factorization.items())}}


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _extensions(H: Subgroup, key: np.ndarray | None) -> list[tuple[int, Subgroup]]:
    """(c, G = H<c>) for c odd in N(H), one per N(H)-class of G."""
    S = sym9()
    NH = normalizer(H)
    odd = NH[S.order[NH] % 2 == 1]
    if key is not None:
        odd = odd[np.argsort(key[odd], kind="stable")]
    marked = np.zeros(S.size, dtype=bool)
    out = []
    for c in odd:
        if marked[c]:
            continue
        n = int(S.order[c])
        powers = [S.identity]
        for _ in range(n - 1):
            powers.append(int(S.compose(powers[-1], int(c))[0]))
        elems = np.unique(np.concatenate([S.compose(np.full(H.order, p), H.elements) for p in powers]))
        G = Subgroup(elems, H.generators + ([int(c)] if n > 1 else []))
        if G.order != H.order * n:
            raise AssertionError("H and <c> do not form a semidirect product")
        gens_mod_h = G.elements[S.order[G.elements] == n]
        for y in gens_mod_h:
            marked[S.conjugates(int(y), NH)] = True
        out.append((int(c), G))
    return out


@dataclass
class CensusResult:
    records: list[CensusRecord]
    two_subgroup_classes: int
    summary: dict

    def to_json(self) -> dict:
        return {"records": [r.to_json() for r in self.records], "summary": self.summary}


def maximal_by_divisibility(orders) -> list[int]:
    s = sorted(set(orders))
    return sorted((a for a in s if not any(b != a and b % a == 0 for b in s)), reverse=True)


def run_census(relabel: tuple[int, ...] | None = None, verify: bool = True) -> CensusResult:
    S = sym9()
    key = _relabel_key(relabel)
    hs = two_subgroups_up_to_conjugacy(relabel)
    records: list[CensusRecord] = []
    groups: list[Subgroup] = []
    for H in hs:
        for c, G in _extensions(H, key):
            gens = [list(S.from_ranks(g).images) for g in G.generators]
            n = G.order // H.order
            records.append(CensusRecord(gens, G.order, H.order, n, 0, _factor(G.order)))
            groups.append(G)
    order = sorted(range(len(records)), key=lambda i: (records[i].order, records[i].h_order,
                                                       invariant(groups[i])))
    records = [records[i] for i in order]
    groups = [groups[i] for i in order]
    for i, r in enumerate(records):
        r.class_id = i
    if verify:
        _verify_distinct(groups)
    summary = summarize(records, len(hs))
    return CensusResult(records, len(hs), summary)


def _verify_distinct(groups: list[Subgroup]) -> None:
    buckets: dict[tuple, list[Subgroup]] = {}
    for G in groups:
        inv = invariant(G)
        for other in buckets.get(inv, []):
            if conjugator(G, other) is not None:
                raise AssertionError("two census records are conjugate in S9")
        buckets.setdefault(inv, []).append(G)


def summarize(records: list[CensusRecord], two_classes: int) -> dict:
    orders = [r.order for r in records]
    maximal = maximal_by_divisibility(orders)
    nontrivial = sum(1 for r in records if r.order > 1)
    ref = set(REFERENCE_SIGMA)
    return {
        "class_count": len(records),
        "class_count_without_trivial": nontrivial,
        "two_subgroup_classes": two_classes,
        "maximal_orders": maximal,
        "matches_reference_sigma": set(maximal) == ref,
        "matches_alt_sigma": set(maximal) == set(ALT_SIGMA),
        "third_entry": 60 if 60 in maximal else (30 if 30 in maximal else None),
        "all_orders_divide_maximal": all(any(m % o == 0 for m in maximal) for o in orders),
        "orders_not_dividing_reference_sigma": sorted({o for o in orders if not any(s % o == 0 for s in ref)}),
        "order_histogram": {str(k): v for k, v in sorted(Counter(orders).items())},
    }


def ramification_table(summary: dict) -> list[int]:
    return sorted(2**9 * n for n in summary["maximal_orders"])


# --------------------------------------------------------------------------
# caching


def version_hash() -> str:
    src = Path(__file__).read_bytes() + Path(__file__).with_name("perms.py").read_bytes()
    return hashlib.sha256(src).hexdigest()[:16]


def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lattice_lab" / "census.json"


def census(cache: str | Path | None = None, use_cache: bool = True) -> dict:
    """Census payload {version_hash, records, summary}, read from or written to the cache."""
    path = Path(cache) if cache else default_cache_path()
    vh = version_hash()
    if use_cache and path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("version_hash") == vh:
                return data
        except (OSError, json.JSONDecodeError):
            pass
    res = run_census()
    data = {"version_hash": vh, **res.to_json()}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data, sort_keys=True))
    except OSError:
        pass
    return data
