"""Permutation groups with deterministic stabilizer chains.

Every chain is built over the complete point ordering ``0 < 1 < ... < n-1``:
level ``x`` holds the orbit of ``x`` under the pointwise stabilizer of
``0..x-1``.  Levels with a trivial orbit are dropped from ``base``, so the base
points are, step by step, the smallest point moved by the current stabilizer.
Because all groups of one degree share this ordering, two chains can be walked
side by side without a base change, which is what the intersection search
relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, invert, mul

DEFAULT_ENUMERATION_THRESHOLD = 0


@dataclass(frozen=True)
class Level:
    point: int
    orbit: tuple[int, ...]
    transversal: dict  # orbit point -> image tuple u with u[point] == orbit point
    inverse: dict      # orbit point -> inverse of transversal[orbit point]
    gens: tuple        # strong generators fixing 0..point-1


def _first_moved(g: tuple) -> int:
    for x, y in enumerate(g):
        if x != y:
            return x
    return len(g)


class _ChainBuilder:
    """Holt-style deterministic Schreier-Sims over the complete base."""

    def __init__(self, degree: int):
        n = degree
        self.n = n
        self.ident = tuple(range(n))
        self.gens = [[] for _ in range(n)]
        self.orbit = [[x] for x in range(n)]
        self.trans = [{x: self.ident} for x in range(n)]
        self.tinv = [{x: self.ident} for x in range(n)]
        self.tested = [set() for _ in range(n)]

    def _extend_orbit(self, lvl: int) -> None:
        orbit, trans, tinv = self.orbit[lvl], self.trans[lvl], self.tinv[lvl]
        gens = self.gens[lvl]
        k = 0
        while k < len(orbit):
            beta = orbit[k]
            u = trans[beta]
            for s in gens:
                img = s[beta]
                if img not in trans:
                    v = mul(s, u)
                    trans[img] = v
                    tinv[img] = invert(v)
                    orbit.append(img)
            k += 1

    def _add(self, h: tuple, lo: int, hi: int) -> None:
        for lvl in range(lo, hi + 1):
            self.gens[lvl].append(h)
            self._extend_orbit(lvl)

    def strip(self, g: tuple, start: int) -> tuple[tuple, int]:
        """Sift ``g`` (which fixes ``0..start-1``) from level ``start`` on."""
        n = self.n
        for lvl in range(start, n):
            beta = g[lvl]
            if beta == lvl:
                continue
            inv = self.tinv[lvl].get(beta)
            if inv is None:
                return g, lvl
            g = mul(inv, g)
        return g, n

    def add_generators(self, gens: Iterable[tuple]) -> None:
        for g in gens:
            j = _first_moved(g)
            if j < self.n:
                self._add(g, 0, j)
        self._close()

    def _close(self) -> None:
        n = self.n
        i = n - 1
        while i >= 0:
            restart = None
            orbit, trans, tinv = self.orbit[i], self.trans[i], self.tinv[i]
            gens, tested = self.gens[i], self.tested[i]
            for bi in range(len(orbit)):
                beta = orbit[bi]
                u = trans[beta]
                for si in range(len(gens)):
                    if (bi, si) in tested:
                        continue
                    tested.add((bi, si))
                    s = gens[si]
                    sg = mul(tinv[s[beta]], mul(s, u))
                    h, j = self.strip(sg, i + 1)
                    if j < n:
                        self._add(h, i + 1, _first_moved(h))
                        restart = _first_moved(h)
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1

    def levels(self) -> list[Level]:
        out = []
        for x in range(self.n):
            if len(self.orbit[x]) > 1:
                out.append(Level(x, tuple(self.orbit[x]), dict(self.trans[x]),
                                 dict(self.tinv[x]), tuple(self.gens[x])))
        return out


class PermGroup:
    """A permutation group given by generators, with its stabilizer chain."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 *, _builder: _ChainBuilder | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = gens[0].degree
        if degree < 1:
            raise ValueError("empty degree")
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        if _builder is None:
            _builder = _ChainBuilder(degree)
            _builder.add_generators(g.images for g in gens)
        self._builder = _builder
        self.levels = _builder.levels()
        self.base = tuple(lv.point for lv in self.levels)
        self._level_of = {lv.point: lv for lv in self.levels}
        self._order = math.prod(len(lv.orbit) for lv in self.levels)

    # construction helpers

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls((), degree)

    def extend(self, new_gens: Sequence[Permutation]) -> PermGroup:
        """The group generated by this group and ``new_gens``, reusing the chain."""
        b = _ChainBuilder.__new__(_ChainBuilder)
        src = self._builder
        b.n, b.ident = src.n, src.ident
        b.gens = [list(x) for x in src.gens]
        b.orbit = [list(x) for x in src.orbit]
        b.trans = [dict(x) for x in src.trans]
        b.tinv = [dict(x) for x in src.tinv]
        b.tested = [set(x) for x in src.tested]
        b.add_generators(g.images for g in new_gens)
        return PermGroup(self.generators + tuple(new_gens), self.degree, _builder=b)

    # basic queries

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def level_at(self, point: int) -> Level | None:
        return self._level_of.get(point)

    def strong_generators(self) -> list[Permutation]:
        seen, out = set(), []
        for lv in self.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(Permutation(g, check=False))
        return out

    def gens_fixing_below(self, point: int) -> list[tuple]:
        """Strong generators of the pointwise stabilizer of ``0..point-1``."""
        for lv in self.levels:
            if lv.point >= point:
                return list(lv.gens)
        return []

    def sift(self, g: tuple) -> tuple:
        for lv in self.levels:
            inv = lv.inverse.get(g[lv.point])
            if inv is None:
                return g
            g = mul(inv, g)
        return g

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} != {self.degree}")
        return self.contains_tuple(p.images)

    def contains_tuple(self, g: tuple) -> bool:
        for lv in self.levels:
            inv = lv.inverse.get(g[lv.point])
            if inv is None:
                return False
            g = mul(inv, g)
        return all(x == y for x, y in enumerate(g))

    __contains__ = contains

    def is_transitive(self) -> bool:
        return len(orbits(self.generators, self.degree)) == 1

    def orbits(self) -> list[list[int]]:
        return orbits(self.generators, self.degree)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_group(self, other: PermGroup) -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def iter_tuples(self) -> Iterator[tuple]:
        """All elements as image tuples, as products of transversal elements."""
        if not self.levels:
            yield tuple(range(self.degree))
            return
        reps = [list(lv.transversal.values()) for lv in self.levels]
        for combo in product(*reps):
            g = combo[-1]
            for u in reversed(combo[:-1]):
                g = mul(u, g)
            yield g

    def elements(self) -> Iterator[Permutation]:
        for g in self.iter_tuples():
            yield Permutation(g, check=False)

    def canonical_left_rep(self, g: tuple) -> tuple:
        """Least element of the left coset ``g * self`` under the chain ordering.

        Greedy level by level: at each base point pick the orbit point whose
        image under the running representative is smallest.
        """
        for lv in self.levels:
            best = None
            best_val = None
            for delta in lv.orbit:
                v = g[delta]
                if best_val is None or v < best_val:
                    best_val, best = v, delta
            if best != lv.point:
                g = mul(g, lv.transversal[best])
        return g

    def canonical_right_rep(self, g: tuple) -> tuple:
        """Key of the right coset ``self * g``: the canonical rep of ``g^-1 * self``."""
        return self.canonical_left_rep(invert(g))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self._order}, ngens={len(self.generators)})"


def build_chain(gens: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


def order(g: PermGroup) -> int:
    return g.order()


def contains(g: PermGroup, p: Permutation) -> bool:
    return g.contains(p)


def is_transitive(g: PermGroup) -> bool:
    return g.is_transitive()


def orbits(gens: Sequence[Permutation], degree: int | None = None) -> list[list[int]]:
    """Finest partition of the points closed under every generator (BFS)."""
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].degree
    seen = [False] * degree
    out = []
    images = [g.images for g in gens]
    for start in range(degree):
        if seen[start]:
            continue
        seen[start] = True
        orb = [start]
        k = 0
        while k < len(orb):
            x = orb[k]
            for im in images:
                y = im[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
            k += 1
        out.append(sorted(orb))
    return out


def _orbit_of(point: int, gens: Sequence[tuple]) -> set[int]:
    orb = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in orb:
                orb.add(y)
                stack.append(y)
    return orb


class _Search:
    """Depth-first search for elements of ``A`` that also lie in ``B``.

    The candidate ``p`` runs through A's chain (products of transversal
    elements); ``r`` is p sifted through B as far as p's images are already
    fixed, which prunes every prefix that no element of B can match.
    """

    def __init__(self, A: PermGroup, B: PermGroup):
        self.A, self.B = A, B
        self.n = A.degree
        self.alevels = A.levels
        self.bounds = [lv.point for lv in A.levels[1:]] + [self.n]
        self.binv = [None] * self.n
        for lv in B.levels:
            self.binv[lv.point] = lv.inverse

    def _feasible(self, r: tuple, lo: int, hi: int):
        binv = self.binv
        for x in range(lo, hi):
            beta = r[x]
            table = binv[x]
            if table is None:
                if beta != x:
                    return None
                continue
            inv = table.get(beta)
            if inv is None:
                return None
            if beta != x:
                r = mul(inv, r)
        return r

    def find(self, level: int, gamma: int):
        """An element of A^(level) ∩ B mapping A's base point at ``level`` to gamma."""
        lv = self.alevels[level]
        u = lv.transversal[gamma]
        return self._dfs(level, u, u)

    def _dfs(self, m: int, p: tuple, r: tuple):
        lo = self.alevels[m].point
        hi = self.bounds[m]
        r = self._feasible(r, lo, hi)
        if r is None:
            return None
        if m + 1 == len(self.alevels):
            return p
        nxt = self.alevels[m + 1]
        for delta in nxt.orbit:
            u = nxt.transversal[delta]
            found = self._dfs(m + 1, mul(p, u), mul(r, u))
            if found is not None:
                return found
        return None


def _start_feasible(B: PermGroup, point: int, gamma: int) -> bool:
    lv = B.level_at(point)
    if lv is None:
        return gamma == point
    return gamma in lv.transversal


def intersection_backtrack(A: PermGroup, B: PermGroup, known: PermGroup | None = None) -> PermGroup:
    """Exact ``A ∩ B`` by a stabilizer-chain backtrack over A's chain.

    Levels of A are handled deepest first; at each level the orbit of the base
    point under the part of the intersection found so far is grown until every
    remaining orbit point of A has been shown unreachable.  ``known`` may name a
    subgroup already known to lie in both groups; it only seeds the search.
    """
    if A.degree != B.degree:
        raise ValueError("degree mismatch")
    search = _Search(A, B)
    found: list[tuple] = []
    for idx in range(len(A.levels) - 1, -1, -1):
        lv = A.levels[idx]
        gens = found + (known.gens_fixing_below(lv.point) if known is not None else [])
        reach = _orbit_of(lv.point, gens)
        for gamma in lv.orbit:
            if gamma in reach or not _start_feasible(B, lv.point, gamma):
                continue
            g = search.find(idx, gamma)
            if g is not None:
                found.append(g)
                gens.append(g)
                reach = _orbit_of(lv.point, gens)
    extra = [Permutation(g, check=False) for g in found]
    if known is not None:
        return known.extend(extra) if extra else known
    return PermGroup(extra, A.degree)


def intersection_enumerate(A: PermGroup, B: PermGroup) -> PermGroup:
    """Exact ``A ∩ B`` by listing the smaller group and sifting through the other."""
    if A.degree != B.degree:
        raise ValueError("degree mismatch")
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    result = PermGroup.trivial(A.degree)
    for g in small.iter_tuples():
        if big.contains_tuple(g) and not result.contains_tuple(g):
            result = result.extend([Permutation(g, check=False)])
    return result


def intersection(A: PermGroup, B: PermGroup, *, threshold: int = DEFAULT_ENUMERATION_THRESHOLD,
                 strategy: str = "auto", known: PermGroup | None = None) -> PermGroup:
    """``A ∩ B``; small groups are enumerated, larger ones searched by backtrack."""
    if strategy == "auto":
        strategy = "enumerate" if min(A.order(), B.order()) <= threshold else "backtrack"
    if strategy == "enumerate":
        return intersection_enumerate(A, B)
    if strategy == "backtrack":
        return intersection_backtrack(A, B, known)
    raise ValueError(f"unknown strategy {strategy!r}")


def intersection_exceeds(A: PermGroup, B: PermGroup, inside: PermGroup) -> tuple | None:
    """Return an element of ``A ∩ B`` outside ``inside``, or None if ``A ∩ B == inside``.

    ``inside`` must be a subgroup of both A and B.  At every base point of A the
    search only tries images that ``inside`` cannot reach, so when the equality
    holds the cost is a handful of orbit lookups.
    """
    search = None
    for idx in range(len(A.levels) - 1, -1, -1):
        lv = A.levels[idx]
        ilv = inside.level_at(lv.point)
        reach = ilv.transversal if ilv is not None else (lv.point,)
        for gamma in lv.orbit:
            if gamma in reach or not _start_feasible(B, lv.point, gamma):
                continue
            if search is None:
                search = _Search(A, B)
            g = search.find(idx, gamma)
            if g is not None:
                return g
    return None


def brute_force_closure(gens: Sequence[Permutation], degree: int, limit: int = 10**6) -> set[tuple]:
    """All products of the generators, by BFS; an oracle for small groups."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    ims = [g.images for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in ims:
                y = mul(s, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise OverflowError("closure exceeds limit")
        frontier = nxt
    return seen
