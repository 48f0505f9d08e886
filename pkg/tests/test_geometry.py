from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import family_instance, involutions
from corpus import corpus
from sncgroups.cgroup import CGroupCandidate, is_c_group_full
from sncgroups.classify import exceptional_n8
from sncgroups.geometry import (ChamberOverflow, CosetGeometry, ExplicitIncidence, IndexOverflow, NotAGeometry,
                                bh91_condition, build_geometry, certify_regular_hypertope, count_chambers,
                                cosets_intersect, incidence_dot, is_flag_transitive_bh91,
                                is_flag_transitive_direct, is_flag_transitive_incremental,
                                is_flag_transitive_parabolic, is_geometry, is_residually_connected, is_thin)
from sncgroups.group import PermGroup
from sncgroups.perm import Permutation


def P(text, n):
    return Permutation.parse(text, n)


def s3_triangle():
    G = PermGroup([P("(0 1)", 3), P("(1 2)", 3)])
    return CosetGeometry(G, [PermGroup([P("(0 1)", 3)]), PermGroup([P("(1 2)", 3)])])


def parabolic_geometry(gens):
    c = CGroupCandidate(gens)
    return c, CosetGeometry(c.group(), {t: c.parabolic([t]) for t in range(c.rank)}, check_subgroups=False)


def broken_system():
    """Family A, types 0..3, with G_2 replaced by a conjugate."""
    c = CGroupCandidate(family_instance("A", 9).gens)
    g = P("(0 8)", 9)
    subs = {t: c.parabolic([t]) for t in range(4)}
    subs[2] = PermGroup([g * h * g.inverse() for h in subs[2].generators], 9)
    return c.group(), subs


def incidence_graph_is_cycle(geo):
    """The two-type incidence graph is one cycle through every element."""
    a, b = geo.types
    inc = geo.incidence(a, b)
    if any(m.bit_count() != 2 for m in inc):
        return False
    seen, cur, prev, steps = {(a, 0)}, (a, 0), None, 0
    while True:
        t, x = cur
        other = b if t == a else a
        row = geo.incidence(t, other)[x]
        nbrs = [(other, y) for y in range(geo.count(other)) if row >> y & 1]
        nxt = nbrs[0] if nbrs[0] != prev else nbrs[1]
        prev, cur = cur, nxt
        steps += 1
        if cur == (a, 0):
            break
        seen.add(cur)
    return steps == len(seen) == geo.count(a) + geo.count(b)


# construction

def test_s3_triangle_counts_and_incidence():
    geo = s3_triangle()
    assert geo.element_counts() == {0: 3, 1: 3}
    assert all(m.bit_count() == 2 for m in geo.incidence(0, 1))
    assert all(m.bit_count() == 2 for m in geo.incidence(1, 0))
    assert incidence_graph_is_cycle(geo)
    assert count_chambers(geo) == 6


def test_family_a_head_square():
    g = family_instance("A", 9).gens
    G = PermGroup([g[0], g[1]])
    geo = CosetGeometry(G, [PermGroup([g[1]]), PermGroup([g[0]])])
    assert G.order() == 8
    assert geo.element_counts() == {0: 4, 1: 4}
    assert incidence_graph_is_cycle(geo)


def test_family_element_counts():
    c, geo = parabolic_geometry(family_instance("A", 9).gens)
    for t in range(c.rank):
        assert geo.count(t) * c.parabolic([t]).order() == 362880
        assert len(geo.space(t)) == geo.count(t)


def test_subgroup_check_and_overflow():
    G = PermGroup([P("(0 1)", 3)])
    with pytest.raises(ValueError):
        build_geometry(G, [PermGroup([P("(1 2)", 3)])])
    S = PermGroup([P("(0 1)", 6), P("(0 1 2 3 4 5)", 6)])
    with pytest.raises(IndexOverflow):
        CosetGeometry(S, [PermGroup([], 6)], limit=100)


def test_incidence_symmetric_and_reflexive():
    c, geo = parabolic_geometry(family_instance("B", 9).gens)
    for i, j in [(0, 2), (1, 5), (3, 6)]:
        fwd, bwd = geo.incidence(i, j), geo.incidence(j, i)
        for x in range(geo.count(i)):
            for y in range(geo.count(j)):
                assert bool(fwd[x] >> y & 1) == bool(bwd[y] >> x & 1)
    assert geo.incident(2, 5, 2, 5) and not geo.incident(2, 5, 2, 6)


def test_cosets_intersect_examples():
    H = PermGroup([P("(0 1)", 3)])
    K = PermGroup([P("(1 2)", 3)])
    e = Permutation.identity(3)
    assert cosets_intersect(e, H, e, H)
    assert not cosets_intersect(e, H, P("(1 2)", 3), H)
    assert cosets_intersect(e, H, e, K)


def test_cosets_intersect_matches_incidence():
    c, geo = parabolic_geometry(family_instance("C", 9).gens)
    si, sj = geo.space(0), geo.space(3)
    for x in range(0, len(si), 17):
        for y in range(0, len(sj), 13):
            rx = Permutation(si.reps[x], check=False)
            ry = Permutation(sj.reps[y], check=False)
            assert cosets_intersect(rx, geo.subgroups[0], ry, geo.subgroups[3]) == geo.incident(0, x, 3, y)


# properties

def test_s3_triangle_properties():
    geo = s3_triangle()
    assert is_geometry(geo) == (True, None)
    assert is_thin(geo)[0] and is_residually_connected(geo)[0]
    assert is_flag_transitive_direct(geo)


def test_disjoint_triangles_not_residually_connected():
    pairs = []
    for base in (0, 3):
        for k in range(3):
            pairs.append(((0, base + k), (1, base + k)))
            pairs.append(((0, base + k), (1, base + (k + 1) % 3)))
    mock = ExplicitIncidence({0: 6, 1: 6}, pairs)
    assert is_geometry(mock)[0]
    assert is_thin(mock)[0]
    ok, witness = is_residually_connected(mock)
    assert not ok and witness == {"flag": []}


def test_thin_requires_geometry():
    mock = ExplicitIncidence({0: 2, 1: 1, 2: 1}, [((0, 0), (1, 0))])
    assert not is_geometry(mock)[0]
    with pytest.raises(NotAGeometry):
        is_thin(mock)


def test_family_b_thin_and_c_rc():
    _, geo = parabolic_geometry(family_instance("B", 9).gens)
    assert is_thin(geo, flag_transitive=True)[0]
    _, geo = parabolic_geometry(family_instance("C", 9).gens)
    assert is_residually_connected(geo, flag_transitive=True)[0]


def test_direct_ft_family_a_full_count():
    c, geo = parabolic_geometry(family_instance("A", 9).gens)
    assert count_chambers(geo) == 362880
    assert is_flag_transitive_direct(geo)
    assert is_flag_transitive_direct(geo, [0, 1, 3])


def test_chamber_overflow():
    _, geo = parabolic_geometry(family_instance("A", 9).gens)
    with pytest.raises(ChamberOverflow):
        count_chambers(geo, limit=1000)


def test_bh91_trivial_extension():
    G = PermGroup([P("(0 1)", 3), P("(1 2)", 3)])
    subs = {0: PermGroup([P("(0 1)", 3)]), 1: PermGroup([P("(1 2)", 3)]), 2: G}
    for a in range(3):
        assert bh91_condition(G, subs, [0, 1, 2], a)
    with pytest.raises(ValueError):
        bh91_condition(G, subs, [0, 1], 0)


@pytest.mark.parametrize("family", ["A", "B", "C"])
def test_rank4_subsystems_incremental_matches_direct(family):
    c = CGroupCandidate(family_instance(family, 9).gens)
    G = c.group()
    subs = {t: c.parabolic([t]) for t in range(c.rank)}
    for T in combinations(range(c.rank), 4):
        s = {t: subs[t] for t in T}
        direct = is_flag_transitive_direct(CosetGeometry(G, s, check_subgroups=False))
        assert is_flag_transitive_incremental(G, s) == direct


def test_rank3_bh91_all_alpha_family_c():
    c = CGroupCandidate(family_instance("C", 9).gens)
    G = c.group()
    subs = {t: c.parabolic([t]) for t in range(c.rank)}
    for T in combinations(range(c.rank), 3):
        direct = is_flag_transitive_direct(CosetGeometry(G, {t: subs[t] for t in T}, check_subgroups=False))
        assert direct
        assert all(bh91_condition(G, subs, T, a) for a in T)


def test_broken_system_detected():
    G, subs = broken_system()
    assert not is_flag_transitive_direct(CosetGeometry(G, subs, check_subgroups=False))
    assert not is_flag_transitive_incremental(G, subs)
    assert not is_flag_transitive_bh91(G, subs)
    assert any(not bh91_condition(G, subs, J, a)
               for k in (3, 4) for J in combinations(range(4), k) for a in J)


def test_family_b_n10_incremental():
    c = CGroupCandidate(family_instance("B", 10).gens)
    stats = {}
    assert is_flag_transitive_parabolic(c, stats=stats)
    assert stats["rank3_checks"] > 0


def test_thin_methods_agree_on_corpus():
    for cand in corpus():
        c = CGroupCandidate(cand.gens)
        if c.rank < 2 or c.group().order() > 5000 or not is_c_group_full(c).is_c_group:
            continue
        geo = CosetGeometry(c.group(), {t: c.parabolic([t]) for t in range(c.rank)}, check_subgroups=False)
        if not is_geometry(geo)[0]:
            continue
        assert is_thin(geo, method="corank1")[0] == is_thin(geo, method="rank2")[0], cand.name


def test_incidence_dot():
    dot = incidence_dot(s3_triangle())
    assert dot.startswith("graph I {") and dot.count(" -- ") == 6
    _, geo = parabolic_geometry(family_instance("A", 9).gens)
    with pytest.raises(ValueError):
        incidence_dot(geo)


# certification

def test_certify_moore_simplex():
    gens = [P(f"({i} {i + 1})", 7) for i in range(6)]
    rep = certify_regular_hypertope(gens)
    assert rep.is_regular_hypertope and rep.chamber_count == 5040
    assert rep.to_json()["regular_hypertope"] is True


def test_certify_exceptional():
    rep = certify_regular_hypertope(exceptional_n8())
    assert rep.is_c_group and rep.is_regular_hypertope
    assert rep.transitive_parabolics == [0]


def test_certify_methods_agree(fam9):
    for f, inst in fam9.items():
        reps = [certify_regular_hypertope(inst.gens, ft_method=m) for m in ("incremental", "direct", "bh91")]
        assert all(r.is_regular_hypertope for r in reps), f
        assert len({r.chamber_count for r in reps}) == 1


def test_certify_non_c_group_reports_failure():
    gens = [P("(0 1)(5 6)", 7), P("(1 2)", 7), P("(4 5)", 7)]
    rep = certify_regular_hypertope(gens)
    assert not rep.is_c_group
    assert "c_group" in rep.witness
    assert rep.is_geometry and not rep.is_thin and not rep.is_regular_hypertope
    assert rep.witness["thin"]["residue_size"] == 4
    direct = certify_regular_hypertope(gens, ft_method="direct")
    assert direct.is_flag_transitive == rep.is_flag_transitive


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8).flatmap(lambda n: st.tuples(involutions(n), involutions(n))))
def test_dihedral_pair_gives_polygon(pair):
    a, b = pair
    if a == b:
        return
    G = PermGroup([a, b])
    geo = CosetGeometry(G, {0: PermGroup([b]), 1: PermGroup([a])})
    p = (a * b).order()
    assert geo.element_counts() == {0: p, 1: p}
    assert incidence_graph_is_cycle(geo)
