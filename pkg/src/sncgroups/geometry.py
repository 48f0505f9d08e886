"""Coset incidence geometries and regular-hypertope certification.

Elements of type ``t`` are the right cosets ``G_t g``.  Two elements are
incident when the cosets meet; since right multiplication preserves that
relation, the incident pairs of types ``(i, j)`` are exactly the orbit of the
pair of identity cosets, which is how incidence is computed.  Incidence is
kept as one bitmask per element and partner type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .group import PermGroup, intersection
from .perm import Permutation, invert, mul

DEFAULT_COSET_LIMIT = 1_000_000
DEFAULT_CHAMBER_LIMIT = 10_000_000


class IndexOverflow(Exception):
    """A coset space exceeds the configured limit."""


class ChamberOverflow(Exception):
    """Chamber enumeration exceeds the configured limit."""


class NotAGeometry(Exception):
    """A flag is not contained in any chamber."""

    def __init__(self, flag):
        self.flag = flag
        super().__init__(f"flag {flag} lies in no chamber")


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


class CosetSpace:
    """Right cosets of ``H`` in ``G`` with the action of G's generators."""

    def __init__(self, G: PermGroup, H: PermGroup, limit: int = DEFAULT_COSET_LIMIT):
        expected = G.order() // H.order()
        if expected > limit:
            raise IndexOverflow(f"index {expected} exceeds limit {limit}")
        self.H = H
        gens = [g.images for g in G.generators]
        ident = tuple(range(G.degree))
        self.reps = [ident]
        self.index = {self.key(ident): 0}
        self.action = [[] for _ in gens]
        k = 0
        while k < len(self.reps):
            g = self.reps[k]
            for si, s in enumerate(gens):
                h = mul(g, s)
                key = self.key(h)
                idx = self.index.get(key)
                if idx is None:
                    idx = len(self.reps)
                    self.index[key] = idx
                    self.reps.append(h)
                self.action[si].append(idx)
            k += 1
        if len(self.reps) != expected:
            raise ValueError(f"coset count {len(self.reps)} differs from index {expected}; is H a subgroup of G?")

    def key(self, g: tuple) -> tuple:
        return self.H.canonical_left_rep(invert(g))

    def locate(self, g: tuple) -> int:
        return self.index[self.key(g)]

    def __len__(self) -> int:
        return len(self.reps)


class IncidenceData:
    """Typed incidence structure: element counts per type and bitmask incidence."""

    types: list

    def count(self, t) -> int:
        raise NotImplementedError

    def incidence(self, i, j) -> list[int]:
        raise NotImplementedError

    def has_group(self) -> bool:
        return False


class ExplicitIncidence(IncidenceData):
    """Incidence given directly, for constructed examples."""

    def __init__(self, counts: Mapping, pairs: Iterable[tuple]):
        self.types = sorted(counts)
        self._counts = dict(counts)
        self._inc = {(i, j): [0] * self._counts[i] for i in self.types for j in self.types if i != j}
        for (i, a), (j, b) in pairs:
            self._inc[(i, j)][a] |= 1 << b
            self._inc[(j, i)][b] |= 1 << a

    def count(self, t) -> int:
        return self._counts[t]

    def incidence(self, i, j) -> list[int]:
        return self._inc[(i, j)]


class CosetGeometry(IncidenceData):
    """The coset incidence system of ``group`` and its subgroups, built lazily."""

    def __init__(self, group: PermGroup, subgroups, *, limit: int = DEFAULT_COSET_LIMIT,
                 check_subgroups: bool = True):
        if not isinstance(subgroups, Mapping):
            subgroups = dict(enumerate(subgroups))
        self.group = group
        self.subgroups = dict(subgroups)
        self.types = sorted(self.subgroups)
        self.limit = limit
        if check_subgroups:
            for t, H in self.subgroups.items():
                if H.degree != group.degree or not H.is_subgroup_of(group):
                    raise ValueError(f"subgroup of type {t} is not contained in the group")
        for t, H in self.subgroups.items():
            if group.order() // H.order() > limit:
                raise IndexOverflow(f"type {t}: index {group.order() // H.order()} exceeds {limit}")
        self._spaces: dict = {}
        self._inc: dict = {}

    def has_group(self) -> bool:
        return True

    def space(self, t) -> CosetSpace:
        sp = self._spaces.get(t)
        if sp is None:
            sp = CosetSpace(self.group, self.subgroups[t], self.limit)
            self._spaces[t] = sp
        return sp

    def count(self, t) -> int:
        return self.group.order() // self.subgroups[t].order()

    def element_counts(self) -> dict:
        return {t: self.count(t) for t in self.types}

    def incidence(self, i, j) -> list[int]:
        got = self._inc.get((i, j))
        if got is not None:
            return got
        si, sj = self.space(i), self.space(j)
        fwd = [0] * len(si)
        bwd = [0] * len(sj)
        fwd[0] = 1
        bwd[0] = 1
        stack = [(0, 0)]
        acts = list(zip(si.action, sj.action))
        while stack:
            a, b = stack.pop()
            for ai, bj in acts:
                x, y = ai[a], bj[b]
                if not fwd[x] >> y & 1:
                    fwd[x] |= 1 << y
                    bwd[y] |= 1 << x
                    stack.append((x, y))
        self._inc[(i, j)] = fwd
        self._inc[(j, i)] = bwd
        return fwd

    def incident(self, i, a: int, j, b: int) -> bool:
        if i == j:
            return a == b
        return bool(self.incidence(i, j)[a] >> b & 1)

    def meet(self, types=None) -> PermGroup:
        types = self.types if types is None else list(types)
        cur = self.subgroups[types[0]]
        for t in types[1:]:
            cur = intersection(cur, self.subgroups[t])
        return cur

    def chamber_orbit_size(self, types=None) -> int:
        return self.group.order() // self.meet(types).order()


def build_geometry(g: PermGroup, subgroups, *, limit: int = DEFAULT_COSET_LIMIT) -> CosetGeometry:
    return CosetGeometry(g, subgroups, limit=limit)


def coset_orbit(H: PermGroup, acting: PermGroup, start: tuple | None = None) -> set:
    """Keys of the right cosets ``H x`` for x in ``start * acting``."""
    ident = tuple(range(H.degree)) if start is None else start
    key0 = H.canonical_left_rep(invert(ident))
    seen = {key0: ident}
    stack = [ident]
    gens = [s.images for s in acting.generators]
    while stack:
        x = stack.pop()
        for s in gens:
            y = mul(x, s)
            k = H.canonical_left_rep(invert(y))
            if k not in seen:
                seen[k] = y
                stack.append(y)
    return set(seen)


def cosets_intersect(rep1: Permutation, sub1: PermGroup, rep2: Permutation, sub2: PermGroup) -> bool:
    """Whether ``sub1 * rep1`` and ``sub2 * rep2`` share an element.

    They meet iff ``rep1 * rep2^-1`` lies in ``sub1 * sub2``, i.e. iff the coset
    ``sub1 * rep1 * rep2^-1`` is one of the cosets ``sub1 * h`` with h in sub2.
    The smaller subgroup is used as the acting side.
    """
    x = mul(rep1.images, invert(rep2.images))
    if sub2.order() <= sub1.order():
        target = sub1.canonical_left_rep(invert(x))
        return target in coset_orbit(sub1, sub2)
    # symmetric form: rep2 * rep1^-1 in sub2 * sub1
    y = invert(x)
    return sub2.canonical_left_rep(invert(y)) in coset_orbit(sub2, sub1)


# flags and chambers

def _types_of(geo: IncidenceData, types):
    return list(geo.types) if types is None else list(types)


def count_chambers(geo: IncidenceData, types=None, limit: int = DEFAULT_CHAMBER_LIMIT) -> int:
    """Number of flags meeting every type in ``types`` (default: all)."""
    order = sorted(_types_of(geo, types), key=lambda t: (geo.count(t), t))
    r = len(order)
    if r == 0:
        return 1
    if r == 1:
        return geo.count(order[0])
    inc = {(a, b): geo.incidence(a, b) for a in order for b in order if a != b}
    total = 0

    def rec(k, masks):
        nonlocal total
        t = order[k]
        if k == r - 1:
            total += masks[k].bit_count()
            if total > limit:
                raise ChamberOverflow(f"more than {limit} chambers")
            return
        for x in _bits(masks[k]):
            new = list(masks)
            empty = False
            for l in range(k + 1, r):
                new[l] = masks[l] & inc[(t, order[l])][x]
                if not new[l]:
                    empty = True
                    break
            if not empty:
                rec(k + 1, new)

    full = [(1 << geo.count(t)) - 1 for t in order]
    rec(0, full)
    return total


def iter_flags(geo: IncidenceData, roots=None, types=None):
    """Yield ``(flag, masks)`` for every flag, as a dict type -> element.

    With ``roots`` (pairs ``(t, x)``), only flags whose least type is ``t``
    and which contain ``x`` are produced.  ``masks`` maps every type outside
    the flag to the bitmask of elements incident to all of it.
    """
    ts = _types_of(geo, types)
    pos = {t: k for k, t in enumerate(ts)}
    inc = {(a, b): geo.incidence(a, b) for a in ts for b in ts if a != b}

    def rec(flag, masks, start):
        yield dict(flag), dict(masks)
        for k in range(start, len(ts)):
            u = ts[k]
            m = masks.get(u, 0)
            for y in _bits(m):
                new = {}
                for w, mw in masks.items():
                    if w != u:
                        new[w] = mw & inc[(u, w)][y]
                flag[u] = y
                yield from rec(flag, new, k + 1)
                del flag[u]

    if roots is None:
        roots = [(t, x) for t in ts for x in range(geo.count(t))]
    for t, x in roots:
        masks = {u: inc[(t, u)][x] for u in ts if u != t}
        yield from rec({t: x}, masks, pos[t] + 1)


def _flag_json(flag: dict) -> list:
    return [[t, x] for t, x in sorted(flag.items())]


def is_geometry(geo: IncidenceData, types=None):
    """Every flag lies in a chamber; returns ``(ok, witness_flag)``.

    With a group acting, only flags whose least-type element is the identity
    coset are examined; every flag is a translate of one of those.
    """
    ts = _types_of(geo, types)
    roots = [(t, 0) for t in ts] if geo.has_group() else None
    for flag, masks in iter_flags(geo, roots, ts):
        if len(flag) < len(ts) and not any(masks.values()):
            return False, _flag_json(flag)
    return True, None


def _base_flags(ts, corank_min=0, corank_max=None):
    r = len(ts)
    corank_max = r if corank_max is None else corank_max
    for size in range(r - corank_max, r - corank_min + 1):
        if size < 0:
            continue
        for J in combinations(ts, size):
            yield {t: 0 for t in J}


def _residue_masks(geo, flag, ts):
    masks = {}
    for u in ts:
        if u in flag:
            continue
        m = (1 << geo.count(u)) - 1
        for t, x in flag.items():
            m &= geo.incidence(t, u)[x]
        masks[u] = m
    return masks


def _flags_for(geo, ts, flag_transitive, corank_min, corank_max):
    if flag_transitive and geo.has_group():
        for flag in _base_flags(ts, corank_min, corank_max):
            yield flag, _residue_masks(geo, flag, ts)
        return
    r = len(ts)
    if corank_max >= r:
        yield {}, {u: (1 << geo.count(u)) - 1 for u in ts}
    for flag, masks in iter_flags(geo, None, ts):
        if corank_min <= r - len(flag) <= corank_max:
            yield flag, masks


def _require_geometry(geo, ts, flag_transitive):
    if not flag_transitive:
        ok, w = is_geometry(geo, ts)
        if not ok:
            raise NotAGeometry(w)


def is_thin(geo: IncidenceData, *, flag_transitive: bool = False, method: str = "corank1", types=None):
    """Every corank-1 residue has exactly two elements; returns ``(ok, witness)``.

    ``method="rank2"`` checks rank-2 residues only (each of their elements
    must meet exactly two of the other type), which is equivalent.
    Under flag-transitivity only flags of identity cosets are examined.
    """
    ts = _types_of(geo, types)
    _require_geometry(geo, ts, flag_transitive)
    if method == "corank1":
        for flag, masks in _flags_for(geo, ts, flag_transitive, 1, 1):
            (m,) = masks.values()
            if m.bit_count() != 2:
                return False, {"flag": _flag_json(flag), "residue_size": m.bit_count()}
        return True, None
    if method == "rank2":
        for flag, masks in _flags_for(geo, ts, flag_transitive, 2, 2):
            (a, ma), (b, mb) = sorted(masks.items())
            for s, ms, o, mo in ((a, ma, b, mb), (b, mb, a, ma)):
                inc = geo.incidence(s, o)
                for x in _bits(ms):
                    k = (inc[x] & mo).bit_count()
                    if k != 2:
                        return False, {"flag": _flag_json({**flag, s: x}), "residue_size": k}
        return True, None
    raise ValueError(f"unknown method {method!r}")


def _connected(geo, masks) -> bool:
    live = {u: m for u, m in masks.items() if m}
    if not live:
        return False
    u0 = min(live)
    x0 = next(_bits(live[u0]))
    seen = {u: 0 for u in live}
    seen[u0] = 1 << x0
    stack = [(u0, x0)]
    while stack:
        u, x = stack.pop()
        for w, mw in live.items():
            if w == u:
                continue
            new = geo.incidence(u, w)[x] & mw & ~seen[w]
            if new:
                seen[w] |= new
                stack.extend((w, y) for y in _bits(new))
    return all(seen[u] == live[u] for u in live)


def is_residually_connected(geo: IncidenceData, *, flag_transitive: bool = False, types=None):
    """Every residue of rank at least two has a connected incidence graph."""
    ts = _types_of(geo, types)
    _require_geometry(geo, ts, flag_transitive)
    for flag, masks in _flags_for(geo, ts, flag_transitive, 2, len(ts)):
        if not _connected(geo, masks):
            return False, {"flag": _flag_json(flag)}
    return True, None


def is_flag_transitive_direct(geo: CosetGeometry, types=None, *, chamber_limit: int = DEFAULT_CHAMBER_LIMIT) -> bool:
    """Chambers form a single orbit and every flag lies in a chamber.

    The orbit of the identity chamber has ``|G| / |meet of the G_t|``
    elements, so transitivity on chambers is a count comparison.  Rank at
    most 3 needs no separate geometry test: flags of rank up to 2 are always
    translates of identity flags.
    """
    ts = _types_of(geo, types)
    if len(ts) <= 2:
        return True
    if count_chambers(geo, ts, chamber_limit) != geo.chamber_orbit_size(ts):
        return False
    return len(ts) <= 3 or is_geometry(geo, ts)[0]


def bh91_condition(g: PermGroup, subgroups, J, alpha) -> bool:
    """Compare the meet of the ``G_j G_alpha`` with ``(meet of G_j) G_alpha``.

    Both sides (inverted) are unions of right cosets of ``G_alpha``: the left
    side is the set of cosets ``G_alpha h`` met by every ``G_j``, the right side
    the orbit of ``G_alpha`` under the meet of the ``G_j``.  The right side is
    always contained in the left, so sizes decide.
    """
    if not isinstance(subgroups, Mapping):
        subgroups = dict(enumerate(subgroups))
    J = list(J)
    if alpha not in J or len(J) < 3:
        raise ValueError("need |J| >= 3 and alpha in J")
    Ga = subgroups[alpha]
    rest = [j for j in J if j != alpha]
    left = None
    for j in rest:
        orb = coset_orbit(Ga, subgroups[j])
        left = orb if left is None else left & orb
    meet = subgroups[rest[0]]
    for j in rest[1:]:
        meet = intersection(meet, subgroups[j])
    right_size = meet.order() // intersection(meet, Ga).order()
    return len(left) == right_size


def is_flag_transitive_bh91(g: PermGroup, subgroups, types=None) -> bool:
    """All conditions with ``alpha(J) = min(J)`` for ``|J| >= 3``."""
    if not isinstance(subgroups, Mapping):
        subgroups = dict(enumerate(subgroups))
    ts = sorted(subgroups) if types is None else sorted(types)
    for size in range(3, len(ts) + 1):
        for J in combinations(ts, size):
            if not bh91_condition(g, subgroups, J, J[0]):
                return False
    return True


# incremental flag-transitivity

class _GeneralSystem:
    """States carry explicit subgroups; residue subgroups come from intersections."""

    def __init__(self, g: PermGroup, subgroups: Mapping, chamber_limit: int):
        self.root = (g, dict(subgroups))
        self.chamber_limit = chamber_limit

    def types(self, state):
        return sorted(state[1])

    def key(self, state):
        return None

    def truncate(self, state, p):
        return (state[0], {t: H for t, H in state[1].items() if t != p})

    def residue(self, state, p):
        G, subs = state
        Hp = subs[p]
        return (Hp, {t: intersection(H, Hp) for t, H in subs.items() if t != p})

    def rank3(self, state, triple) -> bool:
        G, subs = state
        geo = CosetGeometry(G, {t: subs[t] for t in triple}, check_subgroups=False)
        return is_flag_transitive_direct(geo, chamber_limit=self.chamber_limit)


class _ParabolicSystem:
    """States are ``(A, T)``: group Γ_A with subgroups Γ_(A minus t), t in T.

    Valid for C-groups, where Γ_(A∖i) ∩ Γ_(A∖j) = Γ_(A∖{i,j}).
    """

    def __init__(self, cand, chamber_limit: int):
        self.c = cand
        self.root = (cand.full_mask, cand.full_mask)
        self.chamber_limit = chamber_limit
        self._geos: dict = {}

    def types(self, state):
        return [t for t in range(self.c.rank) if state[1] >> t & 1]

    def key(self, state):
        return state

    def truncate(self, state, p):
        return (state[0], state[1] & ~(1 << p))

    def residue(self, state, p):
        return (state[0] & ~(1 << p), state[1] & ~(1 << p))

    def geometry(self, A) -> CosetGeometry:
        geo = self._geos.get(A)
        if geo is None:
            subs = {t: self.c.subgroup(A & ~(1 << t)) for t in range(self.c.rank) if A >> t & 1}
            geo = CosetGeometry(self.c.subgroup(A), subs, check_subgroups=False)
            self._geos[A] = geo
        return geo

    def rank3(self, state, triple) -> bool:
        A = state[0]
        geo = self.geometry(A)
        meet = A
        for t in triple:
            meet &= ~(1 << t)
        expected = self.c.subgroup(A).order() // self.c.subgroup(meet).order()
        return count_chambers(geo, triple, self.chamber_limit) == expected


def _incremental(system, state, pivot, memo, rank3_memo, stats) -> bool:
    key = system.key(state)
    if key is not None and key in memo:
        return memo[key]
    ts = system.types(state)
    if len(ts) <= 2:
        result = True
    elif len(ts) == 3:
        result = _rank3(system, state, tuple(ts), rank3_memo, stats)
    else:
        p = pivot if pivot is not None and pivot in ts else ts[-1]
        others = [t for t in ts if t != p]
        result = (_incremental(system, system.truncate(state, p), None, memo, rank3_memo, stats)
                  and _incremental(system, system.residue(state, p), None, memo, rank3_memo, stats)
                  and all(_rank3(system, state, tuple(sorted((i, j, p))), rank3_memo, stats)
                          for i, j in combinations(others, 2)))
    if key is not None:
        memo[key] = result
    return result


def _rank3(system, state, triple, rank3_memo, stats) -> bool:
    key = system.key(state)
    k = None if key is None else (key[0], triple)
    if k is not None and k in rank3_memo:
        return rank3_memo[k]
    stats["rank3_checks"] = stats.get("rank3_checks", 0) + 1
    ok = system.rank3(state, triple)
    if k is not None:
        rank3_memo[k] = ok
    return ok


def is_flag_transitive_incremental(g: PermGroup, subgroups, pivot=None, *,
                                   chamber_limit: int = DEFAULT_CHAMBER_LIMIT) -> bool:
    """Flag-transitivity by recursion on one pivot type.

    The geometry is flag-transitive exactly when the truncation without the
    pivot and the residue of the pivot (the pivot subgroup with the meets
    ``G_t ∩ G_pivot``) are, and every rank-3 system ``{G_i, G_j, G_pivot}``
    is.  Rank 3 is decided by counting chambers.
    """
    if not isinstance(subgroups, Mapping):
        subgroups = dict(enumerate(subgroups))
    system = _GeneralSystem(g, subgroups, chamber_limit)
    return _incremental(system, system.root, pivot, {}, {}, {})


def is_flag_transitive_parabolic(cand, pivot=None, *, chamber_limit: int = DEFAULT_CHAMBER_LIMIT,
                                 stats: dict | None = None) -> bool:
    """Incremental flag-transitivity for the maximal parabolics of a C-group."""
    system = _ParabolicSystem(cand, chamber_limit)
    return _incremental(system, system.root, pivot, {}, {}, {} if stats is None else stats)


# certification

@dataclass
class HypertopeReport:
    is_c_group: bool
    is_geometry: bool
    is_thin: bool
    is_residually_connected: bool
    is_flag_transitive: bool
    chamber_count: int
    ft_method: str
    transitive_parabolics: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)

    @property
    def is_regular_hypertope(self) -> bool:
        return self.is_geometry and self.is_thin and self.is_residually_connected and self.is_flag_transitive

    def to_json(self) -> dict:
        return {"c_group": self.is_c_group, "geometry": self.is_geometry, "thin": self.is_thin,
                "rc": self.is_residually_connected, "ft": self.is_flag_transitive,
                "chambers": self.chamber_count, "ft_method": self.ft_method,
                "regular_hypertope": self.is_regular_hypertope,
                "transitive_parabolics": self.transitive_parabolics,
                "witness": self.witness or None}


def default_pivot(gens: Sequence[Permutation]) -> int:
    """Largest label whose generator is a transposition ending at a leaf."""
    n = gens[0].degree
    deg = [0] * n
    for g in gens:
        for x in g.support():
            deg[x] += 1
    best = None
    for lab, g in enumerate(gens):
        sup = g.support()
        if len(sup) == 2 and min(deg[sup[0]], deg[sup[1]]) == 1:
            best = lab
    return len(gens) - 1 if best is None else best


def certify_regular_hypertope(gens: Sequence[Permutation], *, ft_method: str = "incremental",
                              pivot: int | None = None, chamber_limit: int = DEFAULT_CHAMBER_LIMIT,
                              candidate=None) -> HypertopeReport:
    """Build the maximal-parabolic coset geometry and test every hypertope property."""
    from .cgroup import CGroupCandidate, is_c_group_recursive

    cand = candidate if candidate is not None else CGroupCandidate(gens)
    crep = is_c_group_recursive(cand)
    r = cand.rank
    G = cand.group()
    subs = {t: cand.parabolic([t]) for t in range(r)}
    witness = {}
    if not crep.is_c_group:
        witness["c_group"] = crep.witness.to_json()
    if ft_method == "incremental" and crep.is_c_group:
        ft = is_flag_transitive_parabolic(cand, default_pivot(cand.gens) if pivot is None else pivot,
                                          chamber_limit=chamber_limit)
    elif ft_method == "incremental":
        ft = is_flag_transitive_incremental(G, subs, pivot, chamber_limit=chamber_limit)
    elif ft_method == "direct":
        ft = is_flag_transitive_direct(CosetGeometry(G, subs, check_subgroups=False), chamber_limit=chamber_limit)
    elif ft_method == "bh91":
        ft = is_flag_transitive_bh91(G, subs)
    else:
        raise ValueError(f"unknown flag-transitivity method {ft_method!r}")
    geo = CosetGeometry(G, subs, check_subgroups=False)
    if ft:
        geometry = True
    else:
        geometry, w = is_geometry(geo)
        if w:
            witness["geometry"] = w
        witness["ft"] = "chambers are not a single orbit or a flag lies in no chamber"
    thin = rc = False
    if geometry:
        thin, w = is_thin(geo, flag_transitive=ft)
        if w:
            witness["thin"] = w
        rc, w = is_residually_connected(geo, flag_transitive=ft)
        if w:
            witness["rc"] = w
    if ft:
        chambers = geo.chamber_orbit_size()
    else:
        chambers = count_chambers(geo, limit=chamber_limit)
    return HypertopeReport(crep.is_c_group, geometry, thin, rc, ft, chambers, ft_method,
                           cand.transitive_parabolics(), witness)


def incidence_dot(geo: IncidenceData, name: str = "I") -> str:
    """Incidence graph in DOT; nodes are ``t_x`` for element x of type t."""
    if len(geo.types) > 4:
        raise ValueError("incidence export is limited to rank 4")
    lines = [f"graph {name} {{"]
    for t in geo.types:
        for x in range(geo.count(t)):
            lines.append(f'  "{t}_{x}" [label="{t}:{x}"];')
    for i, j in combinations(geo.types, 2):
        inc = geo.incidence(i, j)
        for x in range(geo.count(i)):
            for y in _bits(inc[x]):
                lines.append(f'  "{i}_{x}" -- "{j}_{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
