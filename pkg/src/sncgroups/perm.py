"""Permutations of {0, ..., n-1} stored as image tuples.

Composition convention (used everywhere in the package): the right factor
acts first, so ``compose(a, b)[x] == a[b[x]]`` and ``a * b`` means the same
thing.  Orders, orbits and Coxeter labels do not depend on this choice, but
words evaluated in :mod:`sncgroups.presentations` do.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Sequence

MAX_DEGREE = 1 << 16

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """An immutable bijection of ``range(degree)``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        images = tuple(images)
        if check:
            n = len(images)
            if n < 1 or n > MAX_DEGREE:
                raise ValueError(f"degree {n} out of range")
            if sorted(images) != list(range(n)):
                raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if x in seen or not 0 <= x < degree:
                    raise ValueError(f"bad cycle {tuple(cyc)!r} for degree {degree}")
                seen.add(x)
                images[x] = cyc[(k + 1) % len(cyc)]
        return cls(images, check=False)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Permutation:
        """Parse disjoint-cycle notation such as ``"(0 1)(2 3)"`` or ``"()"``."""
        stripped = text.strip()
        if not stripped or _CYCLE_RE.sub("", stripped).strip():
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            tokens = body.replace(",", " ").split()
            if tokens:
                cycles.append([int(t) for t in tokens])
        top = max((max(c) for c in cycles), default=-1) + 1
        if degree is None:
            degree = max(top, 1)
        elif top > degree:
            raise ValueError(f"{text!r} moves points beyond degree {degree}")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"

    def __str__(self) -> str:
        return self.cycle_string()

    def inverse(self) -> Permutation:
        return Permutation(invert(self.images), check=False)

    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self.images)

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def support(self) -> list[int]:
        return [k for k, v in enumerate(self.images) if k != v]

    def order(self) -> int:
        return order_of_element(self)

    def is_involution(self) -> bool:
        """True for elements of order exactly 2."""
        im = self.images
        return not self.is_identity() and all(im[im[x]] == x for x in range(len(im)))

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))


# Raw tuple helpers, used by the group machinery on hot paths.

def mul(a: tuple, b: tuple) -> tuple:
    """Image tuple of ``a * b`` (``b`` acts first)."""
    return tuple([a[x] for x in b])


def invert(a: tuple) -> tuple:
    inv = [0] * len(a)
    for k, v in enumerate(a):
        inv[v] = k
    return tuple(inv)


def cycle_decomposition(images: Sequence[int]) -> list[tuple[int, ...]]:
    """Non-trivial cycles, each starting at its smallest point."""
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start] or images[start] == start:
            continue
        cyc = [start]
        seen[start] = True
        x = images[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = images[x]
        out.append(tuple(cyc))
    return out


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a * b``: apply ``b`` first, then ``a``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")
    return Permutation(mul(a.images, b.images), check=False)


def order_of_element(p: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(p.inverse(), -k)
    result = Permutation.identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def transposition(a: int, b: int, degree: int) -> Permutation:
    return Permutation.from_cycles([(a, b)], degree)


def parse_perm_lines(text: str, degree: int | None = None) -> list[Permutation]:
    """Parse a generator file: one permutation per line, ``#`` starts a comment.

    Without an explicit degree, every permutation gets the degree needed by the
    largest moved point in the whole file.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(Permutation.parse(line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        return []
    top = max(p.degree for p in rows) if degree is None else degree
    if any(max(p.support(), default=0) >= top for p in rows):
        raise ValueError(f"permutation moves points beyond degree {top}")
    return [Permutation.from_cycles(p.cycles(), top) for p in rows]


def format_perm_lines(perms: Sequence[Permutation]) -> str:
    return "".join(p.cycle_string() + "\n" for p in perms)
