import pytest
from hypothesis import strategies as st

from sncgroups.classify import FAMILIES, build_family_instance, leaf_orbit_representatives
from sncgroups.perm import Permutation
from sncgroups.repgraph import enumerate_trees


@st.composite
def permutations(draw, min_degree=1, max_degree=8, degree=None):
    n = degree if degree is not None else draw(st.integers(min_degree, max_degree))
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def involutions(draw, degree):
    """An element of order 2 on ``degree`` points."""
    pts = draw(st.permutations(range(degree)))
    k = draw(st.integers(1, degree // 2))
    return Permutation.from_cycles([(pts[2 * i], pts[2 * i + 1]) for i in range(k)], degree)


@st.composite
def involution_sets(draw, degree, min_size=1, max_size=4):
    gens = draw(st.lists(involutions(degree), min_size=min_size, max_size=max_size, unique=True))
    return gens


def path_tail(m):
    """The path tree among the trees on m vertices."""
    for t in enumerate_trees(m):
        if max(t.degree(v) for v in range(m)) <= 2:
            return t
    raise AssertionError("no path tree")


def family_instance(family, n):
    """Family instance with the path tail attached at its end."""
    t = path_tail(n - 3)
    return build_family_instance(family, t, t.leaves()[0])


def all_family_instances(n):
    out = []
    for t in enumerate_trees(n - 3):
        for v in leaf_orbit_representatives(t):
            for fam in FAMILIES:
                out.append(build_family_instance(fam, t, v))
    return out


@pytest.fixture(scope="session")
def fam9():
    return {f: family_instance(f, 9) for f in FAMILIES}
