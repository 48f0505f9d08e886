"""Presentations on involutory generators: construction, checking, coset enumeration.

A word is a tuple of generator indices; the generators are involutions, so
no inverse markers are needed.  Words are evaluated left to right as the
product ``gens[w[0]] * gens[w[1]] * ...``; whether a relator is trivial does
not depend on the composition convention because reversing the word of
involutions inverts the product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .perm import Permutation, mul
from .repgraph import CoxeterDiagram, RepGraph, coxeter_diagram, line_graph
from .todd_coxeter import OK, enumerate_cosets

DEFAULT_COSET_LIMIT = 5_000_000

Word = tuple


class CosetLimitExceeded(Exception):
    """Enumeration ran out of rows; the index is unknown."""

    def __init__(self, limit: int, live: int):
        self.limit = limit
        self.live = live
        super().__init__(f"coset enumeration exceeded {limit} rows (inconclusive)")


def power(word: Sequence[int], k: int) -> Word:
    return tuple(word) * k


def cat(*words: Sequence[int]) -> Word:
    out = []
    for w in words:
        out.extend(w)
    return tuple(out)


@dataclass
class Presentation:
    rank: int
    relators: list
    subgroup: list = field(default_factory=list)
    flagged: list = field(default_factory=list)

    def __post_init__(self):
        self.relators = [tuple(w) for w in self.relators]
        self.subgroup = [tuple(w) for w in self.subgroup]
        for w in self.relators + self.subgroup:
            if not w:
                raise ValueError("empty word")
            if any(not 0 <= x < self.rank for x in w):
                raise ValueError(f"word {w} uses an index outside 0..{self.rank - 1}")

    def to_text(self) -> str:
        lines = [f"rank {self.rank}"]
        lines += [" ".join(map(str, w)) for w in self.relators]
        if self.subgroup:
            lines.append("SUBGROUP")
            lines += [" ".join(map(str, w)) for w in self.subgroup]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Presentation:
        lines = text.splitlines()
        if not lines:
            raise ValueError("line 1: missing 'rank r' header")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "rank" or not head[1].isdigit():
            raise ValueError(f"line 1: expected 'rank r', got {lines[0]!r}")
        rank = int(head[1])
        rels, subs, target = [], [], None
        target = rels
        for lineno, line in enumerate(lines[1:], 2):
            if line == "SUBGROUP":
                if target is subs:
                    raise ValueError(f"line {lineno}: repeated SUBGROUP")
                target = subs
                continue
            toks = line.split(" ")
            if not line or any(not t.isdigit() for t in toks):
                raise ValueError(f"line {lineno}: expected space-separated indices, got {line!r}")
            target.append(tuple(int(t) for t in toks))
        return cls(rank, rels, subs)


def evaluate(gens: Sequence[Permutation], word: Sequence[int]) -> tuple:
    g = tuple(range(gens[0].degree))
    for x in word:
        g = mul(g, gens[x].images)
    return g


def check_relations(gens: Sequence[Permutation], p: Presentation):
    """``(True, None)`` if every relator is trivial in ``gens``, else ``(False, relator)``."""
    if len(gens) != p.rank:
        raise ValueError(f"rank mismatch: {len(gens)} generators, presentation rank {p.rank}")
    ident = tuple(range(gens[0].degree))
    for w in p.relators:
        if evaluate(gens, w) != ident:
            return False, w
    return True, None


def coxeter_relators(diagram: CoxeterDiagram) -> list:
    rels = [(i, i) for i in range(diagram.rank)]
    for i, j in combinations(range(diagram.rank), 2):
        rels.append(power((i, j), diagram.order(i, j)))
    return rels


def _triangles(diagram: CoxeterDiagram, labels) -> list:
    g = diagram.as_graph().subgraph(labels)
    out = []
    for i, j, k in combinations(sorted(labels), 3):
        if g.has_edge(i, j) and g.has_edge(j, k) and g.has_edge(i, k):
            out.append((i, j, k))
    return out


def triangle_relator(i: int, j: int, k: int) -> Word:
    return power((i, j, i, k), 2)


def relators_rank_n_minus_1(t: RepGraph) -> Presentation:
    """Coxeter relators of the line graph plus one relator per triangle."""
    diag = line_graph(t)
    rels = coxeter_relators(diag)
    rels += [triangle_relator(*tri) for tri in _triangles(diag, range(diag.rank))]
    return Presentation(diag.rank, rels)


def family_extra_relators(family: str) -> list:
    """Additional relators attached to each family head (generators 0..3)."""
    r12_3 = power((1, 2), 3)
    r02_3 = power((0, 2), 3)
    if family == "A":
        return [power(cat(r12_3, (0,)), 3), power(cat((3,), r12_3), 2), power((0, 1, 2, 1), 3)]
    if family == "B":
        return [power(cat((0,), r12_3), 3), power((1, 0, 1, 2), 2), power(cat(r12_3, (3,)), 2)]
    if family == "C":
        return [power(cat(r02_3, r12_3, (1,)), 3), power(cat(r02_3, r12_3), 3),
                power(cat(r12_3, (3,)), 2), power(cat(r02_3, (3,)), 2)]
    raise ValueError(f"unknown family {family!r}")


def family_supplementary_relators(family: str) -> list:
    """Relators expressing a head generator through the others (opt-in).

    For C the head generator 0 equals ``(ρ1 (ρ0ρ2)^3)^2``; without this
    relator the enumeration over the trivial subgroup does not close within
    the default row limit.
    """
    if family not in ("A", "B", "C"):
        raise ValueError(f"unknown family {family!r}")
    if family == "C":
        return [cat((0,), power(cat((1,), power((0, 2), 3)), 2))]
    return []


def relators_rank_n_minus_2(gens: Sequence[Permutation], family: str, *, triangle_min_label: int = 2,
                            supplement: bool = False) -> Presentation:
    """Diagram relators, tail triangle relators and the family relators.

    Every family relator is evaluated in ``gens`` first; one that fails is
    recorded in ``flagged`` and left out.  ``supplement`` appends
    :func:`family_supplementary_relators` under the same check.
    """
    diag = coxeter_diagram(gens)
    rels = coxeter_relators(diag)
    tail = range(triangle_min_label, diag.rank)
    rels += [triangle_relator(*tri) for tri in _triangles(diag, tail)]
    ident = tuple(range(gens[0].degree))
    flagged = []
    extras = family_extra_relators(family)
    if supplement:
        extras += family_supplementary_relators(family)
    for w in extras:
        if evaluate(gens, w) == ident:
            rels.append(w)
        else:
            flagged.append(w)
    return Presentation(len(gens), rels, flagged=flagged)


@dataclass
class CosetTable:
    rows: object  # numpy array, cosets x generators
    complete: bool
    index: int
    defined: int

    def action(self, x: int) -> list[int]:
        return [int(v) for v in self.rows[:, x]]


def todd_coxeter(p: Presentation, subgroup_gens: Sequence[Sequence[int]] | None = None,
                 max_cosets: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    """Index of the subgroup generated by ``subgroup_gens`` (default: the presentation's own)."""
    subs = p.subgroup if subgroup_gens is None else [tuple(w) for w in subgroup_gens]
    status, table, live, defined = enumerate_cosets(p.rank, p.relators, subs, max_cosets)
    if status != OK:
        raise CosetLimitExceeded(max_cosets, live)
    return CosetTable(table, True, live, defined)


def certify_presentation(gens: Sequence[Permutation], p: Presentation, *,
                         max_cosets: int = DEFAULT_COSET_LIMIT, model_order: int | None = None) -> dict:
    """Whether ``p`` presents ⟨gens⟩: relators hold and the presented order matches."""
    ok, bad = check_relations(gens, p)
    if model_order is None:
        from .group import PermGroup
        model_order = PermGroup(gens).order()
    if not ok:
        return {"certified": False, "relations_hold": False, "failing_relator": list(bad),
                "model_order": model_order, "index": None}
    table = todd_coxeter(p, [], max_cosets)
    return {"certified": table.index == model_order, "relations_hold": True, "failing_relator": None,
            "model_order": model_order, "index": table.index, "defined": table.defined,
            "flagged": [list(w) for w in p.flagged]}
