"""Canonical labelling of small vertex-coloured graphs.

Individualisation-refinement: equitable colour refinement, branching on the
first smallest non-singleton cell, and pruning of children that lie in one
orbit of the automorphisms found so far (restricted to those fixing the
current branch).  The canonical code is the least leaf code.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence


def _refine(adj: Sequence[Sequence[int]], cells: list[list[int]]) -> list[list[int]]:
    while True:
        where = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                where[v] = ci
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple(sorted(Counter(where[w] for w in adj[v]).items())) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                changed = True
                for k in keys:
                    out.append([v for v in cell if sig[v] == k])
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def _orbit_roots(n: int, gens: list[tuple]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labelling(adj: Sequence[Sequence[int]], colors: Sequence) -> tuple[list[int], tuple]:
    """Return ``(order, code)`` where ``order[k]`` is the node placed at position k.

    ``colors`` may be any sortable values; nodes are only ever mapped to nodes
    of equal colour.  ``code`` is identical for isomorphic inputs.
    """
    n = len(adj)
    start = [[v for v in range(n) if colors[v] == c] for c in sorted(set(colors))]
    state = {"best": None, "best_order": None, "first": None, "first_order": None}
    autos: list[tuple] = []

    def leaf(cells):
        order = [c[0] for c in cells]
        pos = [0] * n
        for k, v in enumerate(order):
            pos[v] = k
        code = tuple(sorted((min(pos[v], pos[w]), max(pos[v], pos[w]))
                            for v in range(n) for w in adj[v] if v < w))
        for key, okey in (("first", "first_order"), ("best", "best_order")):
            if state[key] == code:
                other = state[okey]
                autos.append(tuple(other[pos[v]] for v in range(n)))
        if state["first"] is None:
            state["first"], state["first_order"] = code, order
        if state["best"] is None or code < state["best"]:
            state["best"], state["best_order"] = code, order

    def search(cells, prefix):
        target = None
        for c in cells:
            if len(c) > 1 and (target is None or len(c) < len(target)):
                target = c
        if target is None:
            leaf(cells)
            return
        ti = cells.index(target)
        tried = []
        for v in sorted(target):
            if tried:
                fixing = [a for a in autos if all(a[p] == p for p in prefix)]
                if fixing:
                    roots = _orbit_roots(n, fixing)
                    if roots[v] in {roots[w] for w in tried}:
                        continue
            tried.append(v)
            rest = [w for w in target if w != v]
            split = cells[:ti] + [[v], rest] + cells[ti + 1:]
            search(_refine(adj, split), prefix + [v])

    search(_refine(adj, start), [])
    colour_seq = tuple(colors[v] for v in state["best_order"])
    return state["best_order"], (colour_seq, state["best"])
