"""Brute-force reference implementations used to cross-check the package.

Nothing here imports kfgmonoid; everything works from open-set families with
plain Python sets and loops.
"""

from __future__ import annotations

from itertools import combinations, permutations


def opens_from_base(base: list[set[int]], n: int) -> set[frozenset[int]]:
    family = {frozenset(), frozenset(range(n))}
    for r in range(1, len(base) + 1):
        for combo in combinations(base, r):
            family.add(frozenset().union(*combo))
    # close under pairwise intersection and union until stable
    changed = True
    while changed:
        changed = False
        for u in list(family):
            for v in list(family):
                for w in (u & v, u | v):
                    if w not in family:
                        family.add(w)
                        changed = True
    return family


def closure(opens: set[frozenset[int]], a: frozenset[int], n: int) -> frozenset[int]:
    full = frozenset(range(n))
    best = full
    for u in opens:
        c = full - u
        if a <= c and len(c) < len(best):
            best = c
    return best


class Space:
    """Operators evaluated directly from the open sets."""

    def __init__(self, opens: set[frozenset[int]], n: int):
        self.opens = opens
        self.n = n
        self.full = frozenset(range(n))

    def a(self, s):
        return self.full - s

    def b(self, s):
        return closure(self.opens, s, self.n)

    def i(self, s):
        return self.a(self.b(self.a(s)))

    def f(self, s):
        return self.b(s) & self.b(self.a(s))

    def g(self, s):
        return s & self.b(self.a(s))

    def word(self, w: str, s):
        if w == "id":
            return s
        if w == "0":
            return frozenset()
        if w == "1":
            return self.full
        if w[0] in "01":
            return self.word(w[0], s)
        for ch in reversed(w):
            s = getattr(self, ch)(s)
        return s

    def subsets(self):
        for r in range(self.n + 1):
            for c in combinations(range(self.n), r):
                yield frozenset(c)


def to_code(s) -> int:
    return sum(1 << p for p in s)


def from_code(code: int) -> frozenset[int]:
    return frozenset(p for p in range(code.bit_length()) if code >> p & 1)


def labeled_topologies(n: int) -> list[frozenset[frozenset[int]]]:
    """Every family of subsets containing ∅ and X closed under ∪ and ∩."""
    full = frozenset(range(n))
    middle = [frozenset(c) for r in range(1, n) for c in combinations(range(n), r)]
    out = []
    for mask in range(1 << len(middle)):
        family = {frozenset(), full} | {middle[j] for j in range(len(middle)) if mask >> j & 1}
        if all(u | v in family and u & v in family for u in family for v in family):
            out.append(frozenset(family))
    return out


def homeomorphism_classes(n: int) -> set[tuple]:
    classes = set()
    for family in labeled_topologies(n):
        classes.add(min(tuple(sorted(tuple(sorted(p[x] for x in u)) for u in family)) for p in permutations(range(n))))
    return classes


def orbit(space: Space, s, generators: str = "abf") -> set[frozenset[int]]:
    """Breadth-first images of ``s`` under words in the generators."""
    seen = {s}
    frontier = [s]
    while frontier:
        nxt = []
        for x in frontier:
            for ch in generators:
                y = getattr(space, ch)(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def monoid_size(space: Space, generators: str) -> int:
    """Number of distinct operators generated, as tables over all subsets."""
    subsets = list(space.subsets())
    identity = tuple(subsets)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for table in frontier:
            for ch in generators:
                op = getattr(space, ch)
                image = tuple(op(x) for x in table)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return len(seen)
