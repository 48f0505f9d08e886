"""HLT coset enumeration for presentations on involutory generators.

Every generator is an involution, so one table column serves a generator and
its inverse: ``table[c, x] = d`` iff ``table[d, x] = c``.  The kernel works on
numpy arrays and is compiled with numba when available.  When the row limit
is hit it runs a lookahead pass (scan without defining) and compacts dead
rows; it gives up once a lookahead frees less than 5% of the rows.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    _jit = njit(cache=True, nogil=True)
except ImportError:  # pragma: no cover
    def _jit(f):
        return f

OK = 0
FULL = 1

# give up when a lookahead frees less than this fraction of the table
_MIN_FREED = 0.05

# state slots
_ROWS, _LIVE, _QLEN, _DEFS = 0, 1, 2, 3


@_jit
def _rep(parent, k):
    r = k
    while parent[r] != r:
        r = parent[r]
    while parent[k] != r:
        nxt = parent[k]
        parent[k] = r
        k = nxt
    return r


@_jit
def _merge(parent, queue, st, k, l):
    a = _rep(parent, k)
    b = _rep(parent, l)
    if a != b:
        lo = min(a, b)
        hi = max(a, b)
        parent[hi] = lo
        queue[st[_QLEN]] = hi
        st[_QLEN] += 1
        st[_LIVE] -= 1


@_jit
def _coincidence(table, parent, queue, st, a, b, ngens):
    st[_QLEN] = 0
    _merge(parent, queue, st, a, b)
    qi = 0
    while qi < st[_QLEN]:
        g = queue[qi]
        qi += 1
        for x in range(ngens):
            d = table[g, x]
            if d >= 0:
                if table[d, x] == g:
                    table[d, x] = -1
                mu = _rep(parent, g)
                nu = _rep(parent, d)
                if table[mu, x] >= 0:
                    _merge(parent, queue, st, nu, table[mu, x])
                elif table[nu, x] >= 0:
                    _merge(parent, queue, st, mu, table[nu, x])
                else:
                    table[mu, x] = nu
                    table[nu, x] = mu


@_jit
def _define(table, parent, st, f, x, limit):
    if st[_ROWS] >= limit:
        return -1
    c = st[_ROWS]
    st[_ROWS] += 1
    st[_LIVE] += 1
    st[_DEFS] += 1
    parent[c] = c
    for y in range(table.shape[1]):
        table[c, y] = -1
    table[f, x] = c
    table[c, x] = f
    return c


@_jit
def _scan(table, parent, queue, st, alpha, word, lo, hi, ngens, limit, fill):
    """Scan ``alpha`` under word[lo:hi]; define cosets when ``fill``.

    Returns OK, or FULL when a definition was needed but no row is free.
    """
    f = alpha
    b = alpha
    i = lo
    j = hi - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, parent, queue, st, f, b, ngens)
            return OK
        while j >= i and table[b, word[j]] >= 0:
            b = table[b, word[j]]
            j -= 1
        if j < i:
            _coincidence(table, parent, queue, st, f, b, ngens)
            return OK
        if i == j:
            x = word[i]
            table[f, x] = b
            table[b, x] = f
            return OK
        if not fill:
            return OK
        if _define(table, parent, st, f, word[i], limit) < 0:
            return FULL


@_jit
def _compact(table, parent, st, alpha):
    """Renumber live rows in order; returns the new index of the first live row >= alpha."""
    rows = st[_ROWS]
    newidx = np.full(rows, -1, dtype=np.int64)
    k = 0
    new_alpha = -1
    for c in range(rows):
        if parent[c] == c:
            if new_alpha < 0 and c >= alpha:
                new_alpha = k
            newidx[c] = k
            k += 1
    if new_alpha < 0:
        new_alpha = k
    ngens = table.shape[1]
    for c in range(rows):
        if parent[c] == c:
            t = newidx[c]
            for x in range(ngens):
                d = table[c, x]
                table[t, x] = -1 if d < 0 else newidx[_rep(parent, d)]
    for c in range(k):
        parent[c] = c
    st[_ROWS] = k
    return new_alpha


@_jit
def _lookahead(table, parent, queue, st, rels, roff, ngens, limit):
    for beta in range(st[_ROWS]):
        if parent[beta] != beta:
            continue
        for r in range(roff.shape[0] - 1):
            if parent[beta] != beta:
                break
            _scan(table, parent, queue, st, beta, rels, roff[r], roff[r + 1], ngens, limit, False)


@_jit
def _enumerate(table, parent, queue, st, rels, roff, subs, soff, ngens, limit):
    st[_ROWS] = 1
    st[_LIVE] = 1
    st[_DEFS] = 1
    parent[0] = 0
    for y in range(ngens):
        table[0, y] = -1
    for s in range(soff.shape[0] - 1):
        while _scan(table, parent, queue, st, 0, subs, soff[s], soff[s + 1], ngens, limit, True) == FULL:
            _lookahead(table, parent, queue, st, rels, roff, ngens, limit)
            _compact(table, parent, st, 0)
            if st[_ROWS] > limit * (1.0 - _MIN_FREED):
                return FULL
    alpha = 0
    while alpha < st[_ROWS]:
        if parent[alpha] == alpha:
            r = 0
            nrel = roff.shape[0] - 1
            while r < nrel and parent[alpha] == alpha:
                if _scan(table, parent, queue, st, alpha, rels, roff[r], roff[r + 1], ngens, limit, True) == FULL:
                    _lookahead(table, parent, queue, st, rels, roff, ngens, limit)
                    alpha = _compact(table, parent, st, alpha)
                    if st[_ROWS] > limit * (1.0 - _MIN_FREED):
                        return FULL
                    if alpha >= st[_ROWS]:
                        break
                    continue
                r += 1
            if alpha < st[_ROWS] and parent[alpha] == alpha:
                for x in range(ngens):
                    if table[alpha, x] < 0:
                        if _define(table, parent, st, alpha, x, limit) < 0:
                            _lookahead(table, parent, queue, st, rels, roff, ngens, limit)
                            alpha = _compact(table, parent, st, alpha)
                            if st[_ROWS] > limit * (1.0 - _MIN_FREED):
                                return FULL
                            break
                else:
                    alpha += 1
                continue
        alpha += 1
    return OK


def _flatten(words, ngens):
    flat, off = [], [0]
    for w in words:
        for x in w:
            if not 0 <= x < ngens:
                raise ValueError(f"generator index {x} out of range")
        flat.extend(w)
        off.append(len(flat))
    return np.array(flat, dtype=np.int64), np.array(off, dtype=np.int64)


def enumerate_cosets(ngens: int, relators, subgroup, limit: int):
    """Run the enumeration; returns ``(status, table, live, defined)``.

    ``table`` is the compacted coset table (rows = cosets) when complete.
    """
    if limit < 1:
        raise ValueError("coset limit must be positive")
    rels, roff = _flatten([w for w in relators if w], ngens)
    subs, soff = _flatten([w for w in subgroup if w], ngens)
    table = np.full((limit, max(ngens, 1)), -1, dtype=np.int32)
    parent = np.zeros(limit, dtype=np.int32)
    queue = np.zeros(limit, dtype=np.int32)
    st = np.zeros(4, dtype=np.int64)
    status = _enumerate(table, parent, queue, st, rels, roff, subs, soff, ngens, limit)
    defined = int(st[_DEFS])
    if status != OK:
        return status, None, int(st[_LIVE]), defined
    _compact(table, parent, st, 0)
    live = int(st[_ROWS])
    return status, table[:live, :ngens].copy(), live, defined
