import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import family_instance, involution_sets
from sncgroups.classify import FAMILIES
from sncgroups.group import PermGroup
from sncgroups.perm import Permutation
from sncgroups.presentations import (CosetLimitExceeded, Presentation, cat, certify_presentation,
                                     check_relations, coxeter_relators, evaluate, family_extra_relators,
                                     family_supplementary_relators, power, relators_rank_n_minus_1,
                                     relators_rank_n_minus_2, todd_coxeter, triangle_relator)
from sncgroups.repgraph import LabeledTree, coxeter_diagram, enumerate_trees


def P(text, n):
    return Permutation.parse(text, n)


def moore(n):
    return [P(f"({i} {i + 1})", n) for i in range(n - 1)]


def path_tree(n):
    return LabeledTree(n, tuple((i, i + 1, i) for i in range(n - 1)))


def star_tree():
    return LabeledTree(4, ((0, 1, 0), (0, 2, 1), (0, 3, 2)))


def is_identity(gens, w):
    return evaluate(gens, w) == tuple(range(gens[0].degree))


# text format

def test_text_round_trip():
    p = Presentation(3, [(0, 0), (0, 1, 0, 1, 0, 1), (1, 2) * 3], [(0,), (1, 2)])
    text = p.to_text()
    assert text.splitlines()[0] == "rank 3"
    assert "SUBGROUP" in text
    q = Presentation.from_text(text)
    assert q.relators == p.relators and q.subgroup == p.subgroup and q.rank == 3


@pytest.mark.parametrize("text, line", [
    ("", 1), ("rank x\n", 1), ("rnk 2\n0 0\n", 1), ("rank 2\n0 a\n", 2), ("rank 2\n0  1\n", 2),
    ("rank 2\n0 1\nSUBGROUP\nSUBGROUP\n", 4), ("rank 2\n\n", 2),
])
def test_text_parse_errors(text, line):
    with pytest.raises(ValueError, match=f"line {line}"):
        Presentation.from_text(text)


def test_word_range_checked():
    with pytest.raises(ValueError):
        Presentation(2, [(0, 2)])
    with pytest.raises(ValueError):
        Presentation(2, [()])


# relation checking

def test_check_relations_examples():
    s3 = moore(3)
    a2 = Presentation(2, coxeter_relators(coxeter_diagram(s3)))
    assert check_relations(s3, a2) == (True, None)
    sq = [P("(1 2)", 4), P("(0 1)(2 3)", 4)]
    ok, bad = check_relations(sq, Presentation(2, [(0, 1) * 3]))
    assert not ok and bad == (0, 1) * 3
    with pytest.raises(ValueError):
        check_relations(s3, Presentation(3, [(0, 0)]))


def test_rank_n_minus_1_relators():
    p = relators_rank_n_minus_1(path_tree(7))
    assert len(p.relators) == 6 + 15
    star = relators_rank_n_minus_1(star_tree())
    assert triangle_relator(0, 1, 2) in star.relators
    assert len(star.relators) == 3 + 3 + 1
    assert check_relations(star_tree().permutations(), star)[0]


@pytest.mark.parametrize("n", [7, 8, 9])
def test_tree_relators_hold(n):
    for t in enumerate_trees(n):
        assert check_relations(t.permutations(), relators_rank_n_minus_1(t)) == (True, None)


def test_family_relators_hold_in_model(fam9):
    a = fam9["A"].gens
    assert is_identity(a, power((0, 1, 2, 1), 3))
    b = fam9["B"].gens
    assert is_identity(b, power((1, 0, 1, 2), 2))
    c = fam9["C"].gens
    assert all(is_identity(c, w) for w in family_extra_relators("C"))
    for f in FAMILIES:
        p = relators_rank_n_minus_2(fam9[f].gens, f)
        assert p.flagged == []
        assert check_relations(fam9[f].gens, p)[0]


def test_supplementary_relator_holds(fam9):
    assert family_supplementary_relators("A") == family_supplementary_relators("B") == []
    (w,) = family_supplementary_relators("C")
    assert w == cat((0,), power(cat((1,), power((0, 2), 3)), 2))
    assert is_identity(fam9["C"].gens, w)
    p = relators_rank_n_minus_2(fam9["C"].gens, "C", supplement=True)
    assert w in p.relators


def test_failing_family_relator_is_flagged(fam9):
    p = relators_rank_n_minus_2(fam9["B"].gens, "A")
    assert p.flagged
    assert all(w not in p.relators for w in p.flagged)
    assert check_relations(fam9["B"].gens, p)[0]


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 7).flatmap(lambda n: st.tuples(involution_sets(n, 2, 4), st.permutations(range(n)))))
def test_relator_evaluation_conjugation_invariant(arg):
    gens, images = arg
    x = Permutation(images)
    conj = [x * g * x.inverse() for g in gens]
    for w in [(0, 1) * 3, (0, 1, 0, 1), cat((0,), power((1, 0), 2)), tuple(range(len(gens))) * 2]:
        assert is_identity(gens, w) == is_identity(conj, w)


# coset enumeration

def test_a2_index_six():
    p = Presentation(2, [(0, 0), (1, 1), (0, 1) * 3])
    t = todd_coxeter(p)
    assert t.index == 6 and t.complete


def test_complete_table_is_an_action():
    p = relators_rank_n_minus_1(star_tree())
    t = todd_coxeter(p)
    assert t.index == 24
    for x in range(p.rank):
        col = t.action(x)
        assert sorted(col) == list(range(t.index))
        assert all(col[col[c]] == c for c in range(t.index))
    for w in p.relators:
        for c in range(t.index):
            d = c
            for x in w:
                d = t.action(x)[d]
            assert d == c


@pytest.mark.parametrize("n", range(3, 10))
def test_coxeter_an_over_maximal_parabolic(n):
    gens = moore(n)
    p = Presentation(n - 1, coxeter_relators(coxeter_diagram(gens)))
    G = PermGroup(gens)
    for k in range(n - 1):
        t = todd_coxeter(p, [(i,) for i in range(n - 1) if i != k])
        H = PermGroup([g for i, g in enumerate(gens) if i != k])
        assert t.index == math.comb(n, k + 1) == G.order() // H.order()


def test_trees_n7_index_5040():
    for t in enumerate_trees(7):
        res = certify_presentation(t.permutations(), relators_rank_n_minus_1(t))
        assert res["certified"] and res["index"] == 5040


def test_moore_presentation_n7():
    res = certify_presentation(moore(7), relators_rank_n_minus_1(path_tree(7)))
    assert res["certified"] and res["model_order"] == 5040


def test_coset_limit_inconclusive():
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(relators_rank_n_minus_1(path_tree(7)), [], 10)


def test_certify_reports_failing_relator():
    gens = moore(4)
    p = Presentation(3, [(0, 0), (0, 1) * 2])
    res = certify_presentation(gens, p)
    assert not res["certified"] and not res["relations_hold"] and res["failing_relator"] == [0, 1, 0, 1]


def test_index_too_large_not_certified():
    p = Presentation(2, [(0, 0), (1, 1), (0, 1) * 6])
    res = certify_presentation(moore(3), p)
    assert res["relations_hold"] and res["index"] == 12 and not res["certified"]


@pytest.mark.parametrize("family", ["A", "B"])
def test_family_n9_certified(family):
    inst = family_instance(family, 9)
    res = certify_presentation(inst.gens, relators_rank_n_minus_2(inst.gens, family))
    assert res["certified"] and res["index"] == 362880


def test_family_c_n9_certified_with_supplement():
    inst = family_instance("C", 9)
    res = certify_presentation(inst.gens, relators_rank_n_minus_2(inst.gens, "C", supplement=True))
    assert res["certified"] and res["index"] == 362880
