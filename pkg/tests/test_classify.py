import math

import pytest

from conftest import family_instance, path_tail
from corpus import LEMMA_CONFIGS
from sncgroups.cgroup import CGroupCandidate, is_c_group_full
from sncgroups.classify import (FAMILIES, build_family_instance, enumerate_rank_n_minus_1,
                                enumerate_rank_n_minus_2, exceptional_n8, leaf_orbit_representatives,
                                restricted_candidates, restricted_converse_search, structural_screen,
                                verify_gens)
from sncgroups.perm import Permutation
from sncgroups.repgraph import build_rep_graph, canonical_form, coxeter_diagram, enumerate_trees


def config(name):
    n, cycles = LEMMA_CONFIGS[name]
    return [Permutation.parse(c, n) for c in cycles]


@pytest.fixture(scope="module")
def rank_n2_n9():
    return enumerate_rank_n_minus_2(9)


# family construction

def test_build_rejects_bad_input():
    t = path_tail(6)
    inner = next(v for v in range(6) if t.degree(v) == 2)
    with pytest.raises(ValueError, match="not a leaf"):
        build_family_instance("A", t, inner)
    with pytest.raises(ValueError):
        build_family_instance("D", t, t.leaves()[0])
    with pytest.raises(ValueError):
        build_family_instance("A", path_tail(3), 0)


def test_family_a_string_instance():
    inst = family_instance("A", 9)
    assert inst.n == 9 and inst.rank == 7
    d = coxeter_diagram(inst.gens)
    assert [p for _, _, p in d.edges()] == [4, 6, 3, 3, 3, 3]
    assert [e[:2] for e in d.edges()] == [(i, i + 1) for i in range(6)]


def test_family_heads():
    c = coxeter_diagram(family_instance("C", 7).gens)
    assert c.order(0, 1) == 2
    b = coxeter_diagram(family_instance("B", 9).gens)
    assert (b.order(0, 1), b.order(0, 2), b.order(1, 2)) == (4, 3, 6)


@pytest.mark.parametrize("family", FAMILIES)
def test_family_shape_invariants(family):
    for t in enumerate_trees(6):
        for v in leaf_orbit_representatives(t):
            inst = build_family_instance(family, t, v)
            g = inst.graph
            types = [x.cycle_type() for x in inst.gens[:2]]
            if family in ("A", "B"):
                assert types == [(2,), (2, 2)]
            else:
                assert types == [(2, 2), (2, 2)]
                square = [0, 1, 2, 3]
                assert sorted(g.degree(x) for x in square) == [2, 2, 2, 3]
            tail = g.restrict(range(2, inst.rank))
            comps = [c for c in tail.components() if len(c) > 1]
            assert len(comps) == 1 and len(comps[0]) == 6
            assert len(tail.edges) == 5
            assert g.n == 9


def test_leaf_orbits():
    path = path_tail(6)
    assert len(leaf_orbit_representatives(path)) == 1
    assert sum(len(leaf_orbit_representatives(t)) for t in enumerate_trees(6)) == 9


# exceptional example

def test_exceptional_generators():
    one_based = ["(1 2)", "(1 2)(3 4)", "(1 2)(7 8)", "(1 2)(5 6)", "(1 3)(6 8)", "(1 8)(3 6)"]
    expected = []
    for text in one_based:
        cyc = [tuple(int(x) - 1 for x in part.split()) for part in text.strip("()").split(")(")]
        expected.append(Permutation.from_cycles(cyc, 8))
    assert exceptional_n8() == expected


def test_exceptional_distinct_from_families():
    ex = canonical_form(build_rep_graph(exceptional_n8()), True)
    fams = set()
    for t in enumerate_trees(5):
        for v in t.leaves():
            for f in FAMILIES:
                fams.add(canonical_form(build_family_instance(f, t, v).graph, True))
    assert len(fams) > 0 and ex not in fams


# rank n-1

def test_rank_n_minus_1_n7():
    res = enumerate_rank_n_minus_1(7)
    assert res.total == 11 and res.all_verified
    assert len({r.canon for r in res.instances}) == 11
    for r in res.instances:
        assert all(g.cycle_type() == (2,) for g in r.gens)
        assert r.report["order"] == 5040 and r.report["diagram_is_line_graph"]
        assert r.report["c_group_full"] and r.report["c_group_recursive"]
    js = res.instances[0].to_json()
    assert list(js) == ["n", "family", "tree", "attach", "gens", "report", "canon"]


def test_out_of_range():
    with pytest.raises(ValueError):
        enumerate_rank_n_minus_1(6)
    with pytest.raises(ValueError):
        enumerate_rank_n_minus_2(8)


# rank n-2

def test_rank_n_minus_2_n9(rank_n2_n9):
    res = rank_n2_n9
    assert res.total == 27 and res.total % 3 == 0
    assert res.counts == {"A": 9, "B": 9, "C": 9}
    assert res.all_verified
    assert len({r.canon for r in res.instances}) == 27
    assert res.extra["leaf_orbits"] == 9 and res.extra["raw_leaves"] == 21
    for r in res.instances:
        assert r.report["order"] == math.factorial(9)
        assert r.report["hypertope"]["regular_hypertope"]
        assert all(v is not False for v in r.report["screen"].values())


def test_rank_n_minus_2_idempotent(rank_n2_n9):
    again = enumerate_rank_n_minus_2(9, verify=False)
    assert [r.canon for r in again.instances] == [r.canon for r in rank_n2_n9.instances]


def test_family_filter():
    res = enumerate_rank_n_minus_2(9, families=["B"], verify=False)
    assert res.counts == {"B": 9}


# structural screen

def test_screen_accepts_family_instances(rank_n2_n9):
    for r in rank_n2_n9.instances:
        assert structural_screen(r.gens).ok


def test_screen_distance_two():
    gens = config("doubled_label_at_distance_two")
    d = structural_screen(gens)
    assert d.conditions["label_multiplicity"] is False
    assert not is_c_group_full(CGroupCandidate(gens)).is_c_group


def test_screen_double_edge():
    gens = config("double_edge")
    d = structural_screen(gens)
    assert d.conditions["tree_or_square"] is False
    assert not is_c_group_full(CGroupCandidate(gens)).is_c_group


def test_screen_square_degrees_and_side_edges():
    assert structural_screen(config("square_two_degree_three")).failed() == ["square_degrees"]
    assert structural_screen(config("head_side_edges")).failed() == ["tree_head_isolated"]


def test_verify_gens_fields(fam9):
    out = verify_gens(fam9["C"].gens, screen=True)
    assert out["verified"] and out["c_group_full"] and out["order_ok"]


# bounded converse search

def test_restricted_candidates_are_rank_n_minus_2():
    for g in restricted_candidates(7):
        assert g.rank == 5 and g.n == 7


def test_restricted_converse_search_n9():
    res = restricted_converse_search(9)
    assert res["outside_families"] == []
    assert res["all_families_found"] and res["c_groups"] == res["family_instances"] == 27
