"""Intersection-property checks for groups generated by involutions.

Subsets of generator indices are bitmasks throughout; ``Γ_J`` below means the
subgroup generated by the generators whose indices lie in the mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .group import PermGroup, intersection, intersection_exceeds
from .perm import Permutation

MAX_FULL_RANK = 12


def mask_to_list(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def list_to_mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass
class CGroupWitness:
    J: list[int]
    K: list[int]
    element: Permutation

    def to_json(self) -> dict:
        return {"J": self.J, "K": self.K, "element": self.element.cycle_string()}


@dataclass
class CGroupReport:
    is_c_group: bool
    method: str
    witness: CGroupWitness | None = None

    def to_json(self) -> dict:
        return {"c_group": self.is_c_group, "method": self.method,
                "witness": self.witness.to_json() if self.witness else None}


class CGroupCandidate:
    """Involution generators with a cache of the subgroups they generate."""

    def __init__(self, gens: Sequence[Permutation]):
        gens = tuple(gens)
        if not gens:
            raise ValueError("at least one generator required")
        n = gens[0].degree
        for k, g in enumerate(gens):
            if g.degree != n:
                raise ValueError(f"generator {k} has degree {g.degree}, expected {n}")
            if not g.is_involution():
                raise ValueError(f"generator {k} is not an involution: {g}")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        self.gens = gens
        self.degree = n
        self.rank = len(gens)
        self.full_mask = (1 << self.rank) - 1
        self._cache: dict[int, PermGroup] = {}

    def subgroup(self, mask: int) -> PermGroup:
        """Γ generated by the generators in ``mask`` (cached)."""
        grp = self._cache.get(mask)
        if grp is None:
            if mask == 0:
                grp = PermGroup.trivial(self.degree)
            else:
                top = mask.bit_length() - 1
                smaller = self.subgroup(mask & ~(1 << top))
                grp = smaller.extend([self.gens[top]])
            self._cache[mask] = grp
        return grp

    def parabolic(self, omit) -> PermGroup:
        return self.subgroup(self.full_mask & ~list_to_mask(omit))

    def group(self) -> PermGroup:
        return self.subgroup(self.full_mask)

    def transitive_parabolics(self) -> list[int]:
        return [i for i in range(self.rank) if self.parabolic([i]).is_transitive()]

    def pair_witness(self, a: int, b: int) -> tuple | None:
        """An element of Γ_a ∩ Γ_b outside Γ_(a&b), or None when they are equal."""
        A, B, L = self.subgroup(a), self.subgroup(b), self.subgroup(a & b)
        if A.order() > B.order():
            A, B = B, A
        return intersection_exceeds(A, B, L)


def parabolic(c: CGroupCandidate, omit) -> PermGroup:
    return c.parabolic(omit)


def is_c_group_full(c: CGroupCandidate, *, threshold: int | None = None) -> CGroupReport:
    """Check Γ_J ∩ Γ_K = Γ_(J∩K) for every pair of incomparable subsets by order."""
    if c.rank > MAX_FULL_RANK:
        raise ValueError(f"rank {c.rank} too large for the full check (max {MAX_FULL_RANK})")
    kw = {} if threshold is None else {"threshold": threshold}
    masks = range(1 << c.rank)
    for a in masks:
        for b in range(a + 1, 1 << c.rank):
            meet = a & b
            if meet == a or meet == b:
                continue
            A, B, L = c.subgroup(a), c.subgroup(b), c.subgroup(meet)
            inter = intersection(A, B, known=L, **kw)
            if inter.order() != L.order():
                g = c.pair_witness(a, b)
                return CGroupReport(False, "full", CGroupWitness(
                    mask_to_list(a), mask_to_list(b), Permutation(g, check=False)))
    return CGroupReport(True, "full")


def is_c_group_recursive(c: CGroupCandidate, *, verify_base: bool = False) -> CGroupReport:
    """Certify every maximal parabolic recursively, then check pairwise meets.

    Subsets of size at most 2 are accepted outright: distinct involutions
    generate a dihedral group in which the property holds.  With
    ``verify_base`` those cases are re-checked by the full method.
    """
    memo: dict[int, CGroupWitness | None] = {}

    def run(mask: int):
        if mask in memo:
            return memo[mask]
        idx = mask_to_list(mask)
        result = None
        if len(idx) <= 2:
            if verify_base and len(idx) == 2:
                sub = CGroupCandidate([c.gens[i] for i in idx])
                rep = is_c_group_full(sub)
                if not rep.is_c_group:
                    w = rep.witness
                    result = CGroupWitness([idx[j] for j in w.J], [idx[j] for j in w.K], w.element)
        else:
            for i in idx:
                result = run(mask & ~(1 << i))
                if result is not None:
                    break
            if result is None:
                for x in range(len(idx)):
                    for y in range(x + 1, len(idx)):
                        a = mask & ~(1 << idx[x])
                        b = mask & ~(1 << idx[y])
                        g = c.pair_witness(a, b)
                        if g is not None:
                            result = CGroupWitness(mask_to_list(a), mask_to_list(b),
                                                   Permutation(g, check=False))
                            break
                    if result is not None:
                        break
        memo[mask] = result
        return result

    w = run(c.full_mask)
    return CGroupReport(w is None, "recursive", w)


def verify_witness(c: CGroupCandidate, w: CGroupWitness) -> bool:
    """The element lies in Γ_J and Γ_K but not in Γ_(J∩K)."""
    a, b = list_to_mask(w.J), list_to_mask(w.K)
    return (c.subgroup(a).contains(w.element) and c.subgroup(b).contains(w.element)
            and not c.subgroup(a & b).contains(w.element))
