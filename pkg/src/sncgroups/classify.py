"""Constructive enumeration of rank n-1 and rank n-2 C-groups of S_n.

Rank n-1: one instance per tree on n vertices, generated by the transpositions
of its edges.  Rank n-2: three families of graphs, each made of a four-vertex
head glued to a tree with n-3 vertices at one of its leaves.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .cgroup import CGroupCandidate, is_c_group_full, is_c_group_recursive
from .geometry import DEFAULT_CHAMBER_LIMIT, certify_regular_hypertope
from .perm import Permutation
from .repgraph import (LabeledTree, NoFracture, RepGraph, build_rep_graph, canonical_form,
                       coxeter_diagram, enumerate_trees, fracture_graph, line_graph, vertex_orbits)

FAMILIES = ("A", "B", "C")

# Head involutions on points 0..3; point 3 is where the tail tree is glued.
_HEADS = {
    "A": {0: [(1, 2)], 1: [(0, 1), (2, 3)]},
    "B": {0: [(1, 3)], 1: [(0, 1), (2, 3)]},
    "C": {0: [(0, 1), (2, 3)], 1: [(0, 2), (1, 3)]},
}

RANK_N_MINUS_1_RANGE = range(7, 13)
RANK_N_MINUS_2_RANGE = range(9, 13)


@dataclass
class FamilyInstance:
    family: str
    tail_tree: LabeledTree
    attach_vertex: int
    n: int
    gens: tuple
    vertex_map: dict = field(default_factory=dict)

    @property
    def graph(self) -> RepGraph:
        return build_rep_graph(self.gens)

    @property
    def rank(self) -> int:
        return len(self.gens)


def build_family_instance(family: str, tail_tree: LabeledTree, attach_vertex: int) -> FamilyInstance:
    """Glue the family head onto ``tail_tree`` at the leaf ``attach_vertex``.

    The leaf becomes point 3; the other tail vertices get points 4, 5, ... in
    BFS order from it, and the tail edge reaching point k gets label k - 2, so
    the edge at the leaf carries label 2.
    """
    if family not in _HEADS:
        raise ValueError(f"unknown family {family!r}")
    m = tail_tree.n
    if m < 4:
        raise ValueError("tail tree needs at least 4 vertices")
    if tail_tree.degree(attach_vertex) != 1:
        raise ValueError(f"attach vertex {attach_vertex} is not a leaf of the tail tree")
    n = m + 3
    adj = {v: sorted(tail_tree.neighbours(v)) for v in range(m)}
    vmap = {attach_vertex: 3}
    queue = deque([attach_vertex])
    tail_edges = []
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in vmap:
                vmap[w] = len(vmap) + 3
                tail_edges.append((vmap[v], vmap[w]))
                queue.append(w)
    gens = [Permutation.from_cycles(_HEADS[family][0], n), Permutation.from_cycles(_HEADS[family][1], n)]
    for a, b in tail_edges:
        gens.append(Permutation.from_cycles([(a, b)], n))
    return FamilyInstance(family, tail_tree, attach_vertex, n, tuple(gens), vmap)


def exceptional_n8() -> list[Permutation]:
    """Six involutions of degree 8 with one transitive maximal parabolic."""
    cycles = [
        [(0, 1)],
        [(0, 1), (2, 3)],
        [(0, 1), (6, 7)],
        [(0, 1), (4, 5)],
        [(0, 2), (5, 7)],
        [(0, 7), (2, 5)],
    ]
    return [Permutation.from_cycles(c, 8) for c in cycles]


# structural screen

@dataclass
class Diagnosis:
    conditions: dict
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.conditions.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if v is False]

    def to_json(self) -> dict:
        return {"ok": self.ok, "conditions": self.conditions, "details": self.details}


def _simple_graph(g: RepGraph) -> nx.Graph:
    s = nx.Graph()
    s.add_nodes_from(range(g.n))
    s.add_edges_from((a, b) for a, b, _ in g.edges)
    return s


def _edge_distance(s: nx.Graph, e, f) -> float:
    best = math.inf
    for x in e[:2]:
        dist = nx.single_source_shortest_path_length(s, x)
        for y in f[:2]:
            best = min(best, dist.get(y, math.inf))
    return best


def _alternating_square(g: RepGraph, e, f) -> bool:
    """Complement edges sharing a vertex lie on a square with alternating labels."""
    shared = set(e[:2]) & set(f[:2])
    if len(shared) != 1:
        return False
    (a,) = shared
    b = e[0] if e[1] == a else e[1]
    d = f[0] if f[1] == a else f[1]
    i, j = e[2], f[2]
    lab = {(x, y, l) for x, y, l in g.edges}
    for c in range(g.n):
        if c in (a, b, d):
            continue
        if (min(b, c), max(b, c), j) in lab and (min(c, d), max(c, d), i) in lab:
            return True
    return False


def _unique_cycle(g: RepGraph):
    s = _simple_graph(g)
    cycles = nx.cycle_basis(s)
    return cycles[0] if len(cycles) == 1 else None


def structural_screen(gens: Sequence[Permutation]) -> Diagnosis:
    """Necessary shape conditions for rank n-2 C-groups with intransitive parabolics.

    Each condition is True, False, or None when it does not apply.
    Raises NoFracture when some label has no separating edge.
    """
    g = build_rep_graph(gens)
    fr = fracture_graph(gens)
    cond: dict = {}
    det: dict = {}
    n = g.n

    comps = fr.components()
    where = {v: k for k, c in enumerate(comps) for v in c}
    cond["fracture_two_components"] = (len(comps) == 2
                                       and all(where[a] != where[b] for a, b, _ in fr.complement))
    det["fracture_components"] = len(comps)

    comp = list(fr.complement)
    pair_ok = True
    for e, f in combinations(comp, 2):
        if not set(e[:2]) & set(f[:2]) or e[2] == f[2]:
            pair_ok = False
        elif e[:2] != f[:2] and not _alternating_square(g, e, f):
            pair_ok = False
    cond["complement_edges_square"] = pair_ok

    s = _simple_graph(g)
    mult_ok = True
    doubled = []
    for lab in range(g.rank):
        es = g.edges_with_label(lab)
        if len(es) > 2:
            mult_ok = False
        elif len(es) == 2:
            doubled.append(lab)
            if _edge_distance(s, es[0], es[1]) != 1:
                mult_ok = False
    cond["label_multiplicity"] = mult_ok
    det["doubled_labels"] = doubled

    pairs = [(a, b) for a, b, _ in g.edges]
    multi = len(set(pairs)) != len(pairs)
    ncomp = nx.number_connected_components(s)
    cyclomatic = len(g.edges) - n + ncomp
    is_tree = cyclomatic == 0 and ncomp == 1
    square = None
    if not multi and cyclomatic == 1:
        cyc = _unique_cycle(g)
        if cyc is not None and len(cyc) == 4:
            labs = []
            for k in range(4):
                x, y = cyc[k], cyc[(k + 1) % 4]
                labs.append(next(l for a, b, l in g.edges if {a, b} == {x, y}))
            if labs[0] == labs[2] and labs[1] == labs[3] and labs[0] != labs[1]:
                square = cyc
    cond["tree_or_square"] = is_tree or square is not None

    if is_tree:
        ok = len(doubled) == 1
        if ok:
            i = doubled[0]
            ends = {v for e in g.edges_with_label(i) for v in e[:2]}
            joins = [e for e in g.edges if e[2] != i and e[0] in ends and e[1] in ends]
            ok = len(joins) == 1
            if ok:
                j = joins[0][2]
                touching = [e for e in g.edges if e[2] not in (i, j) and (e[0] in ends or e[1] in ends)]
                ok = len(touching) <= 1
                det["tree_side_edges"] = len(touching)
        cond["tree_head_isolated"] = ok
    else:
        cond["tree_head_isolated"] = None

    if square is not None:
        degs = sorted(g.degree(v) for v in square)
        cond["square_degrees"] = degs == [2, 2, 2, 3]
    else:
        cond["square_degrees"] = None
    return Diagnosis(cond, det)


# verification and enumeration

@dataclass
class InstanceRecord:
    n: int
    family: str | None
    tree: dict
    attach: int | None
    gens: tuple
    canon: str
    report: dict

    @property
    def verified(self) -> bool:
        return bool(self.report.get("verified"))

    def to_json(self) -> dict:
        return {"n": self.n, "family": self.family, "tree": self.tree, "attach": self.attach,
                "gens": [g.cycle_string() for g in self.gens], "report": self.report,
                "canon": self.canon}


@dataclass
class ClassificationResult:
    n: int
    rank: str
    instances: list
    counts: dict
    total: int
    extra: dict = field(default_factory=dict)

    @property
    def all_verified(self) -> bool:
        return all(r.verified for r in self.instances)

    def summary(self) -> dict:
        return {"n": self.n, "rank": self.rank, "total": self.total, "counts": self.counts,
                "all_verified": self.all_verified, **self.extra}


def verify_gens(gens: Sequence[Permutation], *, both_methods: bool = True, line_tree: RepGraph | None = None,
                screen: bool = False, chamber_limit: int = DEFAULT_CHAMBER_LIMIT) -> dict:
    """Order, intersection property, hypertope certificate (and optional extras)."""
    cand = CGroupCandidate(gens)
    n = cand.degree
    order = cand.group().order()
    rec = is_c_group_recursive(cand)
    out = {"order": order, "order_ok": order == math.factorial(n), "c_group_recursive": rec.is_c_group}
    ok = out["order_ok"] and rec.is_c_group
    if both_methods:
        full = is_c_group_full(cand)
        out["c_group_full"] = full.is_c_group
        ok = ok and full.is_c_group
    if line_tree is not None:
        out["diagram_is_line_graph"] = coxeter_diagram(gens) == line_graph(line_tree)
        ok = ok and out["diagram_is_line_graph"]
    if screen:
        diag = structural_screen(gens)
        out["screen"] = diag.conditions
        ok = ok and diag.ok
    hyp = certify_regular_hypertope(gens, candidate=cand, chamber_limit=chamber_limit)
    out["hypertope"] = hyp.to_json()
    out["verified"] = bool(ok and hyp.is_regular_hypertope)
    return out


def _verify_job(job):
    kind, cycles, n, tree_edges, kw = job
    gens = [Permutation.parse(c, n) for c in cycles]
    tree = RepGraph(n, tuple(tuple(e) for e in tree_edges)) if tree_edges is not None else None
    return verify_gens(gens, line_tree=tree, **kw)


def _run_jobs(jobs: list, n_jobs: int) -> list:
    if n_jobs <= 1 or len(jobs) <= 1:
        return [_verify_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(_verify_job, jobs))


def enumerate_rank_n_minus_1(n: int, *, verify: bool = True, jobs: int = 1,
                             chamber_limit: int = DEFAULT_CHAMBER_LIMIT) -> ClassificationResult:
    """One C-group of rank n-1 per tree on n vertices, generated by edge transpositions."""
    if n not in RANK_N_MINUS_1_RANGE:
        raise ValueError(f"n must lie in {RANK_N_MINUS_1_RANGE.start}..{RANK_N_MINUS_1_RANGE.stop - 1}")
    trees = enumerate_trees(n)
    kw = {"both_methods": True, "chamber_limit": chamber_limit}
    job_list = [("tree", [g.cycle_string() for g in t.permutations()], n, [list(e) for e in t.edges], kw)
                for t in trees]
    reports = _run_jobs(job_list, jobs) if verify else [{} for _ in trees]
    records = []
    for t, rep in zip(trees, reports):
        records.append(InstanceRecord(n, None, t.to_json(), None, tuple(t.permutations()),
                                      canonical_form(t, True).decode(), rep))
    return ClassificationResult(n, "n-1", records, {"trees": len(records)}, len(records))


def leaf_orbit_representatives(tree: LabeledTree) -> list[int]:
    """Least leaf of each orbit of tree automorphisms (labels ignored)."""
    return [orb[0] for orb in vertex_orbits(tree, tree.leaves(), True)]


def enumerate_rank_n_minus_2(n: int, *, families: Iterable[str] = FAMILIES, verify: bool = True,
                             jobs: int = 1, both_methods: bool = False,
                             chamber_limit: int = DEFAULT_CHAMBER_LIMIT) -> ClassificationResult:
    """Family instances over all tails on n-3 vertices and leaf orbits, deduplicated."""
    if n not in RANK_N_MINUS_2_RANGE:
        raise ValueError(f"n must lie in {RANK_N_MINUS_2_RANGE.start}..{RANK_N_MINUS_2_RANGE.stop - 1}")
    families = [f for f in FAMILIES if f in set(families)]
    tails = enumerate_trees(n - 3)
    insts = []
    leaf_orbits = raw_leaves = 0
    for t in tails:
        reps = leaf_orbit_representatives(t)
        leaf_orbits += len(reps)
        raw_leaves += len(t.leaves())
        for fam in families:
            for v in reps:
                insts.append(build_family_instance(fam, t, v))
    seen = {}
    kept = []
    for inst in insts:
        key = canonical_form(inst.graph, True).decode()
        if key not in seen:
            seen[key] = inst
            kept.append((key, inst))
    kw = {"both_methods": both_methods, "screen": True, "chamber_limit": chamber_limit}
    job_list = [("family", [g.cycle_string() for g in inst.gens], n, None, kw) for _, inst in kept]
    reports = _run_jobs(job_list, jobs) if verify else [{} for _ in kept]
    records = []
    counts = {f: 0 for f in families}
    for (key, inst), rep in zip(kept, reports):
        counts[inst.family] += 1
        records.append(InstanceRecord(n, inst.family, inst.tail_tree.to_json(), inst.attach_vertex,
                                      inst.gens, key, rep))
    extra = {"generated": len(insts), "tail_trees": len(tails), "leaf_orbits": leaf_orbits,
             "raw_leaves": raw_leaves, "divisible_by_3": len(records) % 3 == 0}
    return ClassificationResult(n, "n-2", records, counts, len(records), extra)


# bounded converse search

def _paths_of_three_edges(s: nx.Graph):
    for b, c in s.edges:
        for x, y in ((b, c), (c, b)):
            for a in s.neighbors(x):
                if a == y:
                    continue
                for d in s.neighbors(y):
                    if d in (x, a):
                        continue
                    yield a, x, y, d


def restricted_candidates(n: int) -> list[RepGraph]:
    """Rank n-2 graph shapes allowed by the doubling and cycle conditions.

    From every tree on n vertices and every path a-b-c-d in it: the tree with
    labels ``ab = cd = 0``, ``bc = 1``, and the same tree closed by the edge
    ``ad`` labelled 1 into an alternating square.  All other edges get their own
    labels.  Returned up to isomorphism with label renaming.
    """
    out: dict[bytes, RepGraph] = {}
    for t in enumerate_trees(n):
        s = _simple_graph(t)
        for a, b, c, d in _paths_of_three_edges(s):
            fixed = {frozenset((a, b)): 0, frozenset((b, c)): 1, frozenset((c, d)): 0}
            edges, nxt = [], 2
            for x, y in sorted(s.edges):
                lab = fixed.get(frozenset((x, y)))
                if lab is None:
                    lab, nxt = nxt, nxt + 1
                edges.append((x, y, lab))
            for extra in ((), ((a, d, 1),)):
                g = RepGraph(n, tuple(edges) + extra)
                out.setdefault(canonical_form(g, True), g)
    return [out[k] for k in sorted(out)]


def restricted_converse_search(n: int = 9) -> dict:
    """Which restricted shapes give C-groups of order n!, compared with the families."""
    fam = enumerate_rank_n_minus_2(n, verify=False)
    family_keys = {r.canon: r.family for r in fam.instances}
    found, outside = [], []
    cands = restricted_candidates(n)
    for g in cands:
        gens = g.permutations()
        cand = CGroupCandidate(gens)
        if cand.group().order() != math.factorial(n):
            continue
        if not is_c_group_recursive(cand).is_c_group:
            continue
        key = canonical_form(g, True).decode()
        found.append(key)
        if key not in family_keys:
            outside.append(key)
    return {"n": n, "candidates": len(cands), "c_groups": len(found), "outside_families": outside,
            "family_instances": len(family_keys),
            "all_families_found": set(family_keys) <= set(found)}
