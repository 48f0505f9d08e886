"""Edge-labelled multigraphs on permuted points.

A :class:`RepGraph` records, for generators ``gens``, an ``i``-edge ``{a, b}``
whenever ``gens[i]`` swaps ``a`` and ``b``.  The module also builds Coxeter
diagrams, fracture graphs, line graphs of labelled trees, and canonical forms
used to deduplicate graphs up to vertex renaming (and optionally label
renaming).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .canon import canonical_labelling
from .group import orbits
from .perm import Permutation, mul, order_of_element


class NoFracture(Exception):
    """Some label has no edge joining two distinct orbits of its parabolic."""

    def __init__(self, labels):
        self.labels = tuple(sorted(labels))
        super().__init__(f"no fracture graph: labels {list(self.labels)} have no separating edge")


def _norm_edge(a: int, b: int, label: int) -> tuple[int, int, int]:
    return (a, b, label) if a < b else (b, a, label)


@dataclass(frozen=True)
class RepGraph:
    n: int
    edges: tuple
    rank: int = -1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("vertex count must be positive")
        norm = sorted({_norm_edge(*e) for e in self.edges})
        if len(norm) != len(self.edges):
            raise ValueError("duplicate edge")
        used = set()
        for a, b, lab in norm:
            if a == b:
                raise ValueError(f"loop at {a}")
            if not (0 <= a < self.n and 0 <= b < self.n) or lab < 0:
                raise ValueError(f"bad edge {(a, b, lab)}")
            for v in (a, b):
                if (v, lab) in used:
                    raise ValueError(f"vertex {v} meets two {lab}-edges")
                used.add((v, lab))
        object.__setattr__(self, "edges", tuple(norm))
        top = max((e[2] for e in norm), default=-1) + 1
        if self.rank < 0:
            object.__setattr__(self, "rank", top)
        elif self.rank < top:
            raise ValueError("rank smaller than the largest label")

    def labels(self) -> list[int]:
        return list(range(self.rank))

    def edges_with_label(self, label: int) -> list[tuple[int, int, int]]:
        return [e for e in self.edges if e[2] == label]

    def restrict(self, labels: Iterable[int]) -> RepGraph:
        keep = set(labels)
        return RepGraph(self.n, tuple(e for e in self.edges if e[2] in keep), self.rank)

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if v in (a, b))

    def neighbours(self, v: int) -> list[int]:
        out = []
        for a, b, _ in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.n))
        for a, b, lab in self.edges:
            g.add_edge(a, b, label=lab)
        return g

    def components(self) -> list[list[int]]:
        return sorted(sorted(c) for c in nx.connected_components(self.to_networkx()))

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and len(self.components()) == 1

    def permutations(self) -> list[Permutation]:
        """One involution per label, swapping the endpoints of its edges."""
        out = []
        for lab in range(self.rank):
            out.append(Permutation.from_cycles([(a, b) for a, b, l in self.edges if l == lab], self.n))
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> RepGraph:
        return cls(int(data["n"]), tuple(tuple(e) for e in data["edges"]))

    def to_dot(self, dashed: Iterable[tuple] = (), name: str = "G") -> str:
        dashed = {_norm_edge(*e) for e in dashed}
        lines = [f"graph {name} {{", "  node [shape=circle];"]
        lines += [f"  {v};" for v in range(self.n)]
        for a, b, lab in self.edges:
            style = ", style=dashed" if (a, b, lab) in dashed else ""
            lines.append(f'  {a} -- {b} [label="{lab}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class LabeledTree(RepGraph):
    """A connected acyclic RepGraph with one edge per label."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_tree():
            raise ValueError("not a tree")
        if sorted(e[2] for e in self.edges) != list(range(len(self.edges))):
            raise ValueError("tree labels must be 0..n-2, one per edge")

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.degree(v) == 1]


@dataclass(frozen=True)
class CoxeterDiagram:
    rank: int
    orders: dict = field(hash=False)

    def __post_init__(self):
        for (i, j), p in self.orders.items():
            if not (0 <= i < j < self.rank) or p < 2:
                raise ValueError(f"bad entry {(i, j)}: {p}")

    def order(self, i: int, j: int) -> int:
        if i == j:
            return 1
        return self.orders.get((min(i, j), max(i, j)), 2)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, p) for (i, j), p in sorted(self.orders.items()) if p > 2]

    def as_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.rank))
        g.add_edges_from((i, j) for i, j, _ in self.edges())
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoxeterDiagram) or other.rank != self.rank:
            return False
        return self.edges() == other.edges()

    def to_dot(self, name: str = "D") -> str:
        lines = [f"graph {name} {{", "  node [shape=circle];"]
        lines += [f"  {v};" for v in range(self.rank)]
        for i, j, p in self.edges():
            attr = f' [label="{p}"]' if p > 3 else ""
            lines.append(f"  {i} -- {j}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"rank": self.rank, "edges": [list(e) for e in self.edges()]}


@dataclass(frozen=True)
class FractureGraph:
    graph: RepGraph
    complement: tuple

    def components(self) -> list[list[int]]:
        return self.graph.components()

    def to_dot(self, full: RepGraph) -> str:
        return full.to_dot(dashed=self.complement, name="F")


def _check_involutions(gens: Sequence[Permutation]) -> int:
    if not gens:
        raise ValueError("no generators")
    n = gens[0].degree
    for k, g in enumerate(gens):
        if g.degree != n:
            raise ValueError(f"generator {k} has degree {g.degree}, expected {n}")
        im = g.images
        if any(im[im[x]] != x for x in range(n)):
            raise ValueError(f"generator {k} is not an involution: {g}")
    return n


def build_rep_graph(gens: Sequence[Permutation]) -> RepGraph:
    n = _check_involutions(gens)
    edges = []
    for lab, g in enumerate(gens):
        for a in range(n):
            b = g.images[a]
            if a < b:
                edges.append((a, b, lab))
    return RepGraph(n, tuple(edges), len(gens))


def coxeter_diagram(gens: Sequence[Permutation]) -> CoxeterDiagram:
    _check_involutions(gens)
    orders = {}
    for i, j in combinations(range(len(gens)), 2):
        orders[(i, j)] = order_of_element(Permutation(mul(gens[i].images, gens[j].images), check=False))
    return CoxeterDiagram(len(gens), orders)


def fracture_graph(gens: Sequence[Permutation]) -> FractureGraph:
    """Pick, for every label, the least edge whose ends lie in distinct orbits of its parabolic."""
    n = _check_involutions(gens)
    g = build_rep_graph(gens)
    chosen, missing = [], []
    for i in range(len(gens)):
        others = [p for k, p in enumerate(gens) if k != i]
        where = {}
        for ci, orb in enumerate(orbits(others, n)):
            for x in orb:
                where[x] = ci
        cands = [e for e in g.edges_with_label(i) if where[e[0]] != where[e[1]]]
        if cands:
            chosen.append(cands[0])
        else:
            missing.append(i)
    if missing:
        raise NoFracture(missing)
    keep = set(chosen)
    comp = tuple(e for e in g.edges if e not in keep)
    return FractureGraph(RepGraph(n, tuple(chosen), len(gens)), comp)


def tree_transpositions(t: RepGraph) -> list[Permutation]:
    return t.permutations()


def line_graph(t: RepGraph) -> CoxeterDiagram:
    """Line graph of a labelled tree with Coxeter orders 3 on edges, 2 elsewhere."""
    if not t.is_tree():
        raise ValueError("line_graph expects a tree")
    ends = {lab: (a, b) for a, b, lab in t.edges}
    orders = {}
    for i, j in combinations(sorted(ends), 2):
        orders[(i, j)] = 3 if set(ends[i]) & set(ends[j]) else 2
    return CoxeterDiagram(len(ends), orders)


def is_img_diagram(g) -> bool:
    """Chordal, every edge in exactly one maximal clique, every vertex in at most two."""
    if isinstance(g, CoxeterDiagram):
        g = g.as_graph()
    if g.number_of_nodes() == 0:
        return True
    if not nx.is_chordal(g):
        return False
    cliques = [frozenset(c) for c in nx.find_cliques(g)]
    for v in g.nodes:
        if sum(1 for c in cliques if v in c) > 2:
            return False
    for a, b in g.edges:
        if sum(1 for c in cliques if a in c and b in c) != 1:
            return False
    return True


def bfs_labelled_tree(n: int, edge_list: Iterable[tuple[int, int]], root: int = 0) -> LabeledTree:
    """Label tree edges 0, 1, ... in BFS order from ``root`` (neighbours ascending)."""
    adj = {v: [] for v in range(n)}
    for a, b in edge_list:
        adj[a].append(b)
        adj[b].append(a)
    seen = {root}
    queue = deque([root])
    edges = []
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                edges.append((v, w, len(edges)))
                queue.append(w)
    return LabeledTree(n, tuple(edges))


def enumerate_trees(n: int) -> list[LabeledTree]:
    """One labelled representative per isomorphism class of trees on n vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return [LabeledTree(1, ())]
    if n == 2:
        return [LabeledTree(2, ((0, 1, 0),))]
    out = []
    for t in nx.nonisomorphic_trees(n):
        out.append(bfs_labelled_tree(n, t.edges()))
    out.sort(key=lambda t: canonical_form(t, True))
    return out


def _encode(g: RepGraph, allow_label_permutation: bool, vertex_colors=None):
    n = g.n
    labels = list(range(g.rank))
    m = len(g.edges)
    size = n + m + len(labels)
    adj = [[] for _ in range(size)]
    colors = []
    for v in range(n):
        colors.append((0, vertex_colors[v] if vertex_colors is not None else 0))
    for k, (a, b, lab) in enumerate(g.edges):
        node = n + k
        lnode = n + m + lab
        for w in (a, b, lnode):
            adj[node].append(w)
            adj[w].append(node)
        colors.append((1, 0))
    for lab in labels:
        colors.append((2, 0 if allow_label_permutation else lab))
    return adj, colors


def canonical_relabelling(g: RepGraph, allow_label_permutation: bool,
                          vertex_colors=None) -> tuple[list[int], list[int]]:
    """Vertex map and label map taking ``g`` to its canonical representative."""
    adj, colors = _encode(g, allow_label_permutation, vertex_colors)
    order, _ = canonical_labelling(adj, colors)
    n, m = g.n, len(g.edges)
    vmap, lmap = [0] * n, [0] * g.rank
    vk = lk = 0
    for node in order:
        if node < n:
            vmap[node] = vk
            vk += 1
        elif node >= n + m:
            lmap[node - n - m] = lk
            lk += 1
    return vmap, lmap


def canonical_form(g: RepGraph, allow_label_permutation: bool = False, vertex_colors=None) -> bytes:
    """A byte string that is equal for two graphs exactly when they are isomorphic.

    Isomorphism renames vertices, and with ``allow_label_permutation`` also
    renames labels bijectively.  ``vertex_colors`` (optional) must be preserved.
    """
    vmap, lmap = canonical_relabelling(g, allow_label_permutation, vertex_colors)
    edges = sorted(_norm_edge(vmap[a], vmap[b], lmap[lab]) for a, b, lab in g.edges)
    body = ",".join(f"{a}-{b}:{lab}" for a, b, lab in edges)
    text = f"n={g.n};r={g.rank};{body}"
    if vertex_colors is not None:
        cols = [None] * g.n
        for v in range(g.n):
            cols[vmap[v]] = vertex_colors[v]
        text += ";c=" + json.dumps(cols)
    return text.encode()


def vertex_orbits(g: RepGraph, vertices: Iterable[int], allow_label_permutation: bool = True) -> list[list[int]]:
    """Group the given vertices into orbits of the automorphism group of ``g``."""
    groups: dict[bytes, list[int]] = {}
    for v in vertices:
        marks = [1 if w == v else 0 for w in range(g.n)]
        key = canonical_form(g, allow_label_permutation, marks)
        groups.setdefault(key, []).append(v)
    return sorted(groups.values())
